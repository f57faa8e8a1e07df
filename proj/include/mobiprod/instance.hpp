#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mobiprod/modulation.hpp"

namespace mobiprod {

inline constexpr const char* kInstanceSchema = "mobiprod-instance/1";

struct Instance {
  std::string id;
  int num_locations = 1;     // L
  int total_modules = 0;     // Y
  std::vector<int> module_cap;      // Y'_l
  std::vector<int> fixed_capacity;  // U_l
  int module_size = 1;              // G
  std::vector<double> backorder_cost;      // b_l per unit per period
  std::vector<double> holding_cost;        // h_l per unit per period
  std::vector<double> transship_in_cost;   // K^{S+}_l per unit received
  std::vector<double> transship_out_cost;  // K^{S-}_l per unit sent
  double module_move_cost = 0.0;           // K^M per module moved
  double beta = 0.95;
  int horizon = 30;
  ModulationModel model;
  std::uint64_t seed = 0;
  // Movement costs at or above this value disable the corresponding lever.
  double prohibitive_cost = 1000.0;
  // Value tables cover s in +-span_multiplier * (G Y'_l + U_l + d_max).
  int span_multiplier = 5;

  // Generation metadata; informational only.
  std::string set_id;
  double staying_probability = 0.0;

  int capacity(int l, int modules) const {
    return fixed_capacity[l] + modules * module_size;
  }
  bool transship_disabled() const;
  bool module_moves_disabled() const;

  void validate() const;
};

// Instance with L locations and scalar cost rates broadcast to every location.
Instance make_instance(int num_locations, int total_modules, int module_size,
                       double backorder, double holding, double transship_cost,
                       double module_move_cost, double beta,
                       ModulationModel model);

// Canonical JSON text (sorted keys) of the instance.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

void write_instance_file(const Instance& instance, const std::string& path);
Instance read_instance_file(const std::string& path);

// FNV-1a 64 of the canonical JSON text.
std::uint64_t instance_hash(const Instance& instance);

// Hash of the fields a single-location value table of location l depends on.
std::uint64_t table_hash(const Instance& instance, int l);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace mobiprod
