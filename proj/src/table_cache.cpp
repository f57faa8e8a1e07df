#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mobiprod/errors.hpp"
#include "mobiprod/rng.hpp"
#include "mobiprod/tables.hpp"

namespace mobiprod {

namespace {

constexpr char kMagic[4] = {'M', 'P', 'V', 'T'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t bits_of(double v) {
  std::uint64_t b;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
bool get(std::istream& in, T& v) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof v));
}

template <typename T>
void put_vector(std::ostream& out, const std::vector<T>& v) {
  put<std::uint64_t>(out, v.size());
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
bool get_vector(std::istream& in, std::vector<T>& v, std::uint64_t limit) {
  std::uint64_t n;
  if (!get(in, n) || n > limit) return false;
  v.resize(n);
  return static_cast<bool>(in.read(reinterpret_cast<char*>(v.data()),
                                   static_cast<std::streamsize>(n * sizeof(T))));
}

}  // namespace

std::uint64_t table_cache_key(const Instance& instance, int l,
                              const BeliefGrid& grid,
                              const SlValueOptions& options) {
  std::uint64_t key = derive_seed({table_hash(instance, l),
                                   static_cast<std::uint64_t>(grid.divisions),
                                   bits_of(instance.beta)});
  for (const Belief& b : grid.points)
    for (double v : b.values()) key = derive_seed({key, bits_of(v)});
  key = derive_seed(
      {key, options.s_min ? static_cast<std::uint64_t>(*options.s_min) : ~0ULL,
       options.s_max ? static_cast<std::uint64_t>(*options.s_max) : ~0ULL,
       options.epsilon ? bits_of(*options.epsilon) : ~0ULL,
       static_cast<std::uint64_t>(options.max_iters),
       options.horizon ? static_cast<std::uint64_t>(*options.horizon) : ~0ULL});
  return key;
}

void save_table(const ValueTable& t, std::uint64_t key, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write table cache " + tmp);
    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, key);
    put<std::int32_t>(out, t.location);
    put<std::int32_t>(out, t.s_min);
    put<std::int32_t>(out, t.s_max);
    put<std::int32_t>(out, t.u_max);
    put<std::int32_t>(out, t.iterations);
    put(out, t.residual);
    put(out, t.extension_slope);
    put<std::int32_t>(out, t.grid.divisions);
    put<std::uint64_t>(out, t.grid.size());
    for (const Belief& b : t.grid.points) put_vector(out, b.values());
    put_vector(out, t.raw_values());
    put_vector(out, t.raw_bounds());
    put_vector(out, t.raw_base_stock());
    if (!out) throw Error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<ValueTable> load_table(const std::string& path, std::uint64_t key) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[4];
  std::uint32_t version;
  std::uint64_t stored_key;
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
  if (!get(in, version) || version != kVersion) return std::nullopt;
  if (!get(in, stored_key) || stored_key != key) return std::nullopt;
  ValueTable t;
  std::int32_t loc, smin, smax, umax, iters, div;
  if (!get(in, loc) || !get(in, smin) || !get(in, smax) || !get(in, umax) ||
      !get(in, iters) || !get(in, t.residual) || !get(in, t.extension_slope) ||
      !get(in, div))
    return std::nullopt;
  t.location = loc;
  t.s_min = smin;
  t.s_max = smax;
  t.u_max = umax;
  t.iterations = iters;
  t.grid.divisions = div;
  std::uint64_t points;
  if (!get(in, points) || points > 100000) return std::nullopt;
  for (std::uint64_t g = 0; g < points; ++g) {
    std::vector<double> p;
    if (!get_vector(in, p, 64)) return std::nullopt;
    t.grid.points.emplace_back(std::move(p));
  }
  t.allocate();
  const std::uint64_t cells = t.raw_values().size();
  std::vector<double> values, bounds;
  std::vector<int> base;
  if (!get_vector(in, values, cells) || values.size() != cells) return std::nullopt;
  if (!get_vector(in, bounds, cells) || bounds.size() != cells) return std::nullopt;
  if (!get_vector(in, base, cells) || base.size() != t.raw_base_stock().size())
    return std::nullopt;
  t.raw_values() = std::move(values);
  t.raw_bounds() = std::move(bounds);
  t.raw_base_stock() = std::move(base);
  return t;
}

TableSet build_tables(const Instance& instance, const TableOptions& options,
                      TableMemo* memo) {
  TableSet set;
  const StationaryResult st = stationary_distribution(instance.model);
  set.pi = st.pi;
  set.pi_unique = st.unique;
  set.grid = belief_grid(instance.model.num_states(), options.divisions, st.pi);
  set.pi_index = *find_grid_index(set.grid, st.pi);
  if (!options.cache_dir.empty())
    std::filesystem::create_directories(options.cache_dir);
  for (int l = 0; l < instance.num_locations; ++l) {
    const std::uint64_t key =
        table_cache_key(instance, l, set.grid, options.value);
    if (memo != nullptr) {
      if (auto it = memo->find(key); it != memo->end()) {
        set.tables.push_back(it->second);
        set.tables.back().location = l;
        continue;
      }
    }
    std::string path;
    if (!options.cache_dir.empty()) {
      std::ostringstream name;
      name << options.cache_dir << "/table-" << std::hex << key << ".bin";
      path = name.str();
      if (auto cached = load_table(path, key)) {
        cached->location = l;
        if (memo != nullptr) memo->emplace(key, *cached);
        set.tables.push_back(std::move(*cached));
        continue;
      }
    }
    set.tables.push_back(
        static_value_iteration(instance, l, set.grid, options.value));
    if (!path.empty()) save_table(set.tables.back(), key, path);
    if (memo != nullptr) memo->emplace(key, set.tables.back());
  }
  return set;
}

}  // namespace mobiprod
