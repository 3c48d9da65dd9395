#pragma once

#include <map>
#include <string>
#include <vector>

#include "bihamil/flags/flags.hpp"
#include "bihamil/lift/lift.hpp"

namespace bihamil {

struct ExpectedClaim {
  std::string name;
  std::string anchor;  // the asserted statement
  std::string op;      // operation that checks it
};

// A point of the transversal {zero_coords = 0}.
struct Probe {
  std::vector<std::string> zero_coords;
  Point point;
};

struct Fixture {
  std::string name;
  std::map<std::string, std::string> params;  // resolved, canonical text
  Chart base;
  Tensor11 h;
  std::vector<KForm> alphas;
  std::vector<std::string> fiber_names;
  std::vector<std::string> zero_coords;  // default transversal
  LiftResult lift;
  FlagData flag;
  std::vector<Scalar> flag_functions;
  std::vector<Probe> probes;
  std::vector<ExpectedClaim> expected;
};

std::vector<std::string> fixture_names();
// Keys accepted by build(name) with their default values.
std::map<std::string, std::string> default_params(const std::string& name);

// Throws PreconditionError on an unknown name, unknown key or a parameter
// violating the fixture's hypotheses.
Fixture build(const std::string& name, const std::map<std::string, std::string>& params = {});

struct ClaimResult {
  std::string name;
  std::string anchor;
  std::string op;
  bool pass = false;
  std::string value;  // canonical rendering of what was computed
};

struct VerifyReport {
  std::string fixture;
  std::vector<ClaimResult> claims;
  bool all_pass() const;
};

// Extra points (default transversal) are appended to the fixture's probes.
VerifyReport verify(const Fixture& f, const std::vector<Point>& extra_points = {});

// Single-term injections into the fixture's flag data, each meant to break a
// flag condition.
struct FlagPerturbation {
  std::string label;
  FlagData data;
};
std::vector<FlagPerturbation> flag_perturbations(const Fixture& f);

// Whether any reported flag quantity is nonzero (or failing).
bool flag_detects(const FlagReport& rep);

}  // namespace bihamil
