#pragma once

#include <string>
#include <vector>

#include "zerocap/scene.hpp"

namespace zerocap {

struct SimWorld {
  RobotFleet fleet;
  Box2 bounds;
  double dt = 0.05;  // seconds per step
  double arrival_tol = 0.02;  // meters
  int max_steps = 10000;

  void validate() const;
};

struct TrajectorySample {
  double t = 0.0;
  Point2 position;
};

/// samples[i] is robot i's path, starting with its position at t = 0.
struct Trajectory {
  std::vector<std::vector<TrajectorySample>> samples;
};

struct DeployResult {
  RobotFleet final_fleet;
  Trajectory trajectory;
  std::vector<bool> arrived;
  int steps = 0;
};

/// Moves every robot straight toward its target by at most max_speed * dt.
SimWorld step(SimWorld world, const DeploymentPlan& plan);

/// Steps until every robot is within arrival_tol or max_steps is reached.
/// Never throws on non-arrival; see deploy().
DeployResult simulate(const SimWorld& world, const DeploymentPlan& plan);

/// simulate() that throws Timeout naming the robots still travelling.
DeployResult deploy(const SimWorld& world, const DeploymentPlan& plan);

std::vector<bool> verify_arrival(const RobotFleet& fleet, const DeploymentPlan& plan, double tol);

/// CSV "robot_id,t,x,y", one row per robot per recorded step.
std::string trajectory_csv(const Trajectory& trajectory);

}  // namespace zerocap
