#include "mobiprod/instance.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mobiprod/errors.hpp"

namespace mobiprod {

using nlohmann::json;

namespace {

void check_size(std::size_t got, int want, const char* field) {
  if (static_cast<int>(got) != want)
    throw ValidationError(std::string("instance: ") + field +
                          " has wrong length");
}

void check_nonnegative(const std::vector<double>& v, const char* field) {
  for (double x : v)
    if (!(x >= 0.0))
      throw ValidationError(std::string("instance: negative ") + field);
}

json model_to_json(const ModulationModel& m) {
  json j;
  j["transition"] = m.transition;
  j["outcomes"] = m.outcomes;
  j["demand_pmf"] = m.demand_pmf;
  j["aod_pmf"] = m.aod_pmf;
  return j;
}

ModulationModel model_from_json(const json& j) {
  ModulationModel m;
  m.transition = j.at("transition").get<Matrix>();
  m.outcomes = j.at("outcomes").get<std::vector<int>>();
  m.demand_pmf = j.at("demand_pmf").get<std::vector<Matrix>>();
  if (j.contains("aod_pmf")) m.aod_pmf = j.at("aod_pmf").get<Matrix>();
  return m;
}

}  // namespace

bool Instance::transship_disabled() const {
  for (int l = 0; l < num_locations; ++l)
    if (transship_in_cost[l] + transship_out_cost[l] < prohibitive_cost)
      return false;
  return true;
}

bool Instance::module_moves_disabled() const {
  return module_move_cost >= prohibitive_cost;
}

void Instance::validate() const {
  if (num_locations < 1) throw ValidationError("instance: L must be >= 1");
  if (total_modules < 0) throw ValidationError("instance: Y must be >= 0");
  if (module_size < 1) throw ValidationError("instance: G must be >= 1");
  check_size(module_cap.size(), num_locations, "module_cap");
  check_size(fixed_capacity.size(), num_locations, "fixed_capacity");
  check_size(backorder_cost.size(), num_locations, "backorder_cost");
  check_size(holding_cost.size(), num_locations, "holding_cost");
  check_size(transship_in_cost.size(), num_locations, "transship_in_cost");
  check_size(transship_out_cost.size(), num_locations, "transship_out_cost");
  check_nonnegative(backorder_cost, "backorder_cost");
  check_nonnegative(holding_cost, "holding_cost");
  check_nonnegative(transship_in_cost, "transship_in_cost");
  check_nonnegative(transship_out_cost, "transship_out_cost");
  if (!(module_move_cost >= 0.0))
    throw ValidationError("instance: negative module_move_cost");
  int cap_total = 0;
  for (int l = 0; l < num_locations; ++l) {
    if (module_cap[l] < 0 || fixed_capacity[l] < 0)
      throw ValidationError("instance: negative capacity");
    cap_total += module_cap[l];
  }
  if (cap_total < total_modules)
    throw ValidationError("instance: module caps cannot hold Y modules");
  if (!(beta >= 0.0 && beta < 1.0))
    throw ValidationError("instance: beta must lie in [0, 1)");
  if (horizon < 0) throw ValidationError("instance: negative horizon");
  if (span_multiplier < 1)
    throw ValidationError("instance: span_multiplier must be >= 1");
  model.validate();
  check_size(model.demand_pmf.size(), num_locations, "demand_pmf");
}

Instance make_instance(int num_locations, int total_modules, int module_size,
                       double backorder, double holding, double transship_cost,
                       double module_move_cost, double beta,
                       ModulationModel model) {
  Instance inst;
  inst.num_locations = num_locations;
  inst.total_modules = total_modules;
  inst.module_cap.assign(num_locations, total_modules);
  inst.fixed_capacity.assign(num_locations, 0);
  inst.module_size = module_size;
  inst.backorder_cost.assign(num_locations, backorder);
  inst.holding_cost.assign(num_locations, holding);
  inst.transship_in_cost.assign(num_locations, transship_cost / 2.0);
  inst.transship_out_cost.assign(num_locations, transship_cost / 2.0);
  inst.module_move_cost = module_move_cost;
  inst.beta = beta;
  inst.model = std::move(model);
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["schema"] = kInstanceSchema;
  j["id"] = inst.id;
  j["set"] = inst.set_id;
  j["L"] = inst.num_locations;
  j["Y"] = inst.total_modules;
  j["module_cap"] = inst.module_cap;
  j["fixed_capacity"] = inst.fixed_capacity;
  j["G"] = inst.module_size;
  j["b"] = inst.backorder_cost;
  j["h"] = inst.holding_cost;
  j["K_S_in"] = inst.transship_in_cost;
  j["K_S_out"] = inst.transship_out_cost;
  j["K_M"] = inst.module_move_cost;
  j["beta"] = inst.beta;
  j["T"] = inst.horizon;
  j["seed"] = inst.seed;
  j["phi"] = inst.staying_probability;
  j["prohibitive_cost"] = inst.prohibitive_cost;
  j["span_multiplier"] = inst.span_multiplier;
  j["modulation"] = model_to_json(inst.model);
  j["meta"] = {
      {"units",
       {{"module_cap", "modules"},
        {"fixed_capacity", "product units/period"},
        {"G", "product units/period per module"},
        {"b", "currency per backlogged unit per period"},
        {"h", "currency per held unit per period"},
        {"K_S_in", "currency per unit received by transshipment"},
        {"K_S_out", "currency per unit sent by transshipment"},
        {"K_M", "currency per module moved"},
        {"beta", "per-period discount factor"},
        {"T", "periods"},
        {"modulation.outcomes", "product units/period"},
        {"modulation.transition", "per-period probability"}}}};
  return j.dump(1);
}

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("instance: malformed JSON: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != kInstanceSchema)
      throw ValidationError("instance: unsupported schema " +
                            j.at("schema").get<std::string>());
    Instance inst;
    inst.id = j.at("id").get<std::string>();
    inst.set_id = j.value("set", std::string());
    inst.num_locations = j.at("L").get<int>();
    inst.total_modules = j.at("Y").get<int>();
    inst.module_cap = j.at("module_cap").get<std::vector<int>>();
    inst.fixed_capacity = j.at("fixed_capacity").get<std::vector<int>>();
    inst.module_size = j.at("G").get<int>();
    inst.backorder_cost = j.at("b").get<std::vector<double>>();
    inst.holding_cost = j.at("h").get<std::vector<double>>();
    inst.transship_in_cost = j.at("K_S_in").get<std::vector<double>>();
    inst.transship_out_cost = j.at("K_S_out").get<std::vector<double>>();
    inst.module_move_cost = j.at("K_M").get<double>();
    inst.beta = j.at("beta").get<double>();
    inst.horizon = j.at("T").get<int>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.staying_probability = j.value("phi", 0.0);
    inst.prohibitive_cost = j.value("prohibitive_cost", 1000.0);
    inst.span_multiplier = j.value("span_multiplier", 5);
    inst.model = model_from_json(j.at("modulation"));
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("instance: bad field: ") + e.what());
  }
}

void write_instance_file(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << instance_to_json(instance) << '\n';
  if (!out) throw Error("write failed: " + path);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open instance file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t instance_hash(const Instance& instance) {
  return fnv1a64(instance_to_json(instance));
}

std::uint64_t table_hash(const Instance& inst, int l) {
  json j;
  j["transition"] = inst.model.transition;
  j["outcomes"] = inst.model.outcomes;
  j["demand_pmf"] = inst.model.demand_pmf[l];
  j["module_cap"] = inst.module_cap[l];
  j["fixed_capacity"] = inst.fixed_capacity[l];
  j["G"] = inst.module_size;
  j["b"] = inst.backorder_cost[l];
  j["h"] = inst.holding_cost[l];
  j["beta"] = inst.beta;
  j["span_multiplier"] = inst.span_multiplier;
  return fnv1a64(j.dump());
}

}  // namespace mobiprod
