#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobiprod/instance.hpp"
#include "mobiprod/modulation.hpp"
#include "mobiprod/sl_value.hpp"

namespace mobiprod {

// Value tables of every location on a shared belief grid.
struct TableSet {
  BeliefGrid grid;
  std::vector<ValueTable> tables;  // one per location
  Belief pi;
  std::size_t pi_index = 0;  // grid index of pi
  bool pi_unique = true;
};

struct TableOptions {
  int divisions = 3;  // grid step 1/divisions
  SlValueOptions value;
  // Directory for the binary cache; empty disables caching.
  std::string cache_dir;
};

// In-memory store of computed tables keyed by table_cache_key; instances
// that differ only in movement costs share their tables through it.
using TableMemo = std::map<std::uint64_t, ValueTable>;

TableSet build_tables(const Instance& instance, const TableOptions& options = {},
                      TableMemo* memo = nullptr);

// Binary cache of one location's table. The key covers every input the
// table depends on (instance fields, grid, beta, truncation options).
std::uint64_t table_cache_key(const Instance& instance, int l,
                              const BeliefGrid& grid,
                              const SlValueOptions& options);
void save_table(const ValueTable& table, std::uint64_t key,
                const std::string& path);
// nullopt when the file is missing, foreign, or keyed differently.
std::optional<ValueTable> load_table(const std::string& path, std::uint64_t key);

}  // namespace mobiprod
