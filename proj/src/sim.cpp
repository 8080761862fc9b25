#include "zerocap/sim.hpp"

#include <algorithm>
#include <cstdio>

#include "zerocap/error.hpp"

namespace zerocap {

void SimWorld::validate() const {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvariantViolation, "dt: must be > 0");
  if (!(arrival_tol > 0.0)) throw Error(ErrorCode::InvariantViolation, "arrival_tol: must be > 0");
  if (max_steps < 0) throw Error(ErrorCode::InvariantViolation, "max_steps: must be >= 0");
  for (const auto& r : fleet.robots)
    if (!bounds.contains(r.position))
      throw Error(ErrorCode::InvariantViolation, "robot " + std::to_string(r.id) + " outside world bounds");
}

namespace {

void advance(SimWorld& world, const DeploymentPlan& plan) {
  for (std::size_t i = 0; i < world.fleet.robots.size(); ++i) {
    RobotState& r = world.fleet.robots[i];
    const Point2 target = plan.targets[i];
    const Point2 d = target - r.position;
    const double remaining = norm(d);
    if (remaining == 0.0) continue;
    const double reach = r.max_speed * world.dt;
    if (remaining <= reach) r.position = target;
    else r.position = r.position + d * (reach / remaining);
  }
}

void check_plan(const SimWorld& world, const DeploymentPlan& plan) {
  if (plan.size() != world.fleet.size())
    throw Error(ErrorCode::InvariantViolation, "plan length " + std::to_string(plan.size()) + " differs from fleet size " +
                                                   std::to_string(world.fleet.size()));
}

}  // namespace

SimWorld step(SimWorld world, const DeploymentPlan& plan) {
  check_plan(world, plan);
  advance(world, plan);
  return world;
}

std::vector<bool> verify_arrival(const RobotFleet& fleet, const DeploymentPlan& plan, double tol) {
  std::vector<bool> out(fleet.size(), false);
  for (std::size_t i = 0; i < fleet.size() && i < plan.size(); ++i)
    out[i] = distance(fleet.robots[i].position, plan.targets[i]) <= tol;
  return out;
}

DeployResult simulate(const SimWorld& initial, const DeploymentPlan& plan) {
  initial.validate();
  check_plan(initial, plan);
  validate_plan(plan, initial.fleet.size(), initial.bounds);
  SimWorld world = initial;
  DeployResult out;
  out.trajectory.samples.resize(world.fleet.size());
  auto record = [&](int k) {
    for (std::size_t i = 0; i < world.fleet.size(); ++i)
      out.trajectory.samples[i].push_back({k * world.dt, world.fleet.robots[i].position});
  };
  record(0);
  auto all_arrived = [&] {
    const auto flags = verify_arrival(world.fleet, plan, world.arrival_tol);
    return std::all_of(flags.begin(), flags.end(), [](bool b) { return b; });
  };
  int k = 0;
  while (k < world.max_steps && !all_arrived()) {
    advance(world, plan);
    ++k;
    record(k);
  }
  out.steps = k;
  out.arrived = verify_arrival(world.fleet, plan, world.arrival_tol);
  out.final_fleet = world.fleet;
  return out;
}

DeployResult deploy(const SimWorld& world, const DeploymentPlan& plan) {
  DeployResult out = simulate(world, plan);
  std::string missing;
  for (std::size_t i = 0; i < out.arrived.size(); ++i)
    if (!out.arrived[i]) missing += (missing.empty() ? "" : ",") + std::to_string(out.final_fleet.robots[i].id);
  if (!missing.empty())
    throw Error(ErrorCode::Timeout, "robots not arrived after " + std::to_string(out.steps) + " steps: " + missing);
  return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "robot_id,t,x,y\n";
  std::size_t steps = 0;
  for (const auto& s : trajectory.samples) steps = std::max(steps, s.size());
  char buf[128];
  for (std::size_t k = 0; k < steps; ++k)
    for (std::size_t i = 0; i < trajectory.samples.size(); ++i) {
      if (k >= trajectory.samples[i].size()) continue;
      const auto& s = trajectory.samples[i][k];
      std::snprintf(buf, sizeof buf, "%zu,%.4f,%.6f,%.6f\n", i, s.t, s.position.x, s.position.y);
      out += buf;
    }
  return out;
}

}  // namespace zerocap
