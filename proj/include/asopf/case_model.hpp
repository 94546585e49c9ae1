#pragma once

#include "asopf/types.hpp"

#include <string>
#include <vector>

namespace asopf {

/// A MATPOWER case file, numerically verbatim. Tables keep every column the
/// file provides, including ones DC-OPF does not use.
struct RawCase {
  std::string case_name;
  double base_mva = 0.0;
  std::vector<std::vector<double>> bus_table;
  std::vector<std::vector<double>> gen_table;
  std::vector<std::vector<double>> branch_table;
  std::vector<std::vector<double>> gencost_table;
};

struct Bus {
  int id = 0;          // original bus number from the file
  double demand = 0.0; // p.u. active power
  bool is_load = false;
};

struct Generator {
  int bus = 0;  // internal bus index
  double p_min = 0.0;
  double p_max = 0.0;
  double cost = 0.0;  // $/p.u.-h linear coefficient
};

struct Branch {
  int from = 0;  // internal bus indices
  int to = 0;
  double susceptance = 0.0;  // 1/(x * tap), p.u.
  double f_max = 0.0;        // +inf when the file gives no rating
};

/// Validated per-unit network; element order follows the case file with
/// out-of-service rows dropped.
struct Network {
  std::string case_name;
  double base_mva = 0.0;
  std::vector<Bus> buses;
  std::vector<Generator> generators;
  std::vector<Branch> branches;
  int slack_bus = 0;  // internal index

  int n_bus() const { return static_cast<int>(buses.size()); }
  int n_gen() const { return static_cast<int>(generators.size()); }
  int n_branch() const { return static_cast<int>(branches.size()); }

  std::vector<int> load_buses() const;  // internal indices with demand > 0
  double total_demand() const;          // p.u.
};

struct Diagnostic {
  std::string code;    // e.g. "BoundsInverted", "InsufficientCapacity"
  std::string detail;
  int element = -1;    // offending element index, -1 when global
};

RawCase parse_case(const std::string& text);
RawCase parse_case_file(const std::string& path);

/// Writes a RawCase back out as a MATPOWER file. parse(serialize(x)) == x
/// table-for-table.
std::string serialize_case(const RawCase& raw);

Network build_network(const RawCase& raw);

std::vector<Diagnostic> validate(const Network& net);

}  // namespace asopf
