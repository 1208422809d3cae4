#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mv/lattice.hpp"
#include "mv/localsent.hpp"
#include "mv/multival.hpp"

namespace mv {

// a parsed instance file: named objects over one ground field
struct Instance {
  FieldDesc field = FieldDesc::rationals();
  std::vector<std::pair<std::string, Valuation>> valuations;
  std::vector<std::pair<std::string, MultiValRing>> rings;
  std::vector<std::pair<std::string, std::pair<ModuleVec, std::string>>>
      modules;  // module, over-ring name
  std::vector<std::pair<std::string, FinLattice>> lattices;
  int64_t heightBound = 64;
  int64_t scaleHeight = 64;

  const Valuation& valuation(const std::string& name) const;
  const MultiValRing& ring(const std::string& name) const;
  const ModuleVec& module(const std::string& name) const;
  const std::string& module_ring(const std::string& name) const;
  const FinLattice& lattice(const std::string& name) const;
};

Instance parse_instance(const std::string& text);

enum class Verdict { Pass, Fail, Skip, RefutedOnScope };

std::string verdict_name(Verdict v);

struct CheckRecord {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string details;
  // stable-ordered key=value pairs for the machine format
  std::vector<std::pair<std::string, std::string>> data;
};

struct Report {
  std::vector<CheckRecord> records;
  bool hasFail() const;
  int exit_status() const { return hasFail() ? 1 : 0; }
  std::string render(bool machine) const;
};

// cmd = {"weight", "R"} etc.; throws DomainError on unknown command/arity
Report run_command(const Instance& inst, const std::vector<std::string>& cmd);

// every applicable check against every named ring and lattice
Report verify_suite(const Instance& inst);

// evaluation structure for a ring honoring the instance scope parameters
Structure scoped_structure(const Instance& inst, const MultiValRing& R);

}  // namespace mv
