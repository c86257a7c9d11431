#pragma once

// Straight-line re-derivation of every condition, written against the raw
// scenario fields and sharing no evaluation code with the library. Tests
// compare the engine's statuses to these.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <dismed/calculus.hpp>
#include <dismed/conditions.hpp>
#include <dismed/scenario.hpp>

namespace oracle {

enum class Tri { F, T, U };

struct Options {
  double rel_tol = 0.05;
  double zero_tol = 0.01;
  double fd_scale = 1e-3;
  bool joint_min = false;
  dismed::GuardMode guard = dismed::GuardMode::Vacuous;
  bool b1_joint = false;
  bool seller_U_sa = false;
  double T = 1.0;
  double dt = 0.01;
};

Options options_from(const dismed::EvalConfig& cfg);

using Vals = std::map<std::string, double>;

// Stored values by name, optionally with one listing state's overlay.
Vals values(const dismed::Scenario& s, const std::string& state = "");
// Stored or bundled quantity ("I_p+I_i", "max(psi_bi,psi_b)", "rho_i&rho_p", "B").
double quantity(const Vals& v, const std::string& name, bool joint_min);

// Derivative of driven w.r.t. driver through the declared base response.
std::optional<double> deriv(const dismed::Scenario& s, const std::string& driven,
                            const std::string& driver, int order, const Options& o);

// Trapezoid rule over [0, T] with time paths substituted for the stored
// values of `used`; nullopt when a sampled path stops short of T.
std::optional<double> horizon_integral(const dismed::Scenario& s,
                                       const std::function<double(const Vals&)>& integrand,
                                       const std::vector<std::string>& used, const Options& o);

struct Verdict {
  dismed::Status status = dismed::Status::Indeterminate;
  bool skipped = false;
};

// id as printed, e.g. "B5".
Verdict evaluate(const dismed::Scenario& s, const std::string& id, const Options& o);

std::string fixture(const std::string& name);

}  // namespace oracle
