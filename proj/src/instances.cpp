#include "mobiprod/instances.hpp"

#include <cmath>
#include <sstream>

#include "mobiprod/errors.hpp"
#include "mobiprod/rng.hpp"

namespace mobiprod {

namespace {

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

const double kSetACosts[] = {0.0, 1.5, 2.0, 2.5, 10000.0};
const double kSetBCosts[] = {0.0, 1.5, 2.0, 2.5, 1000.0};

}  // namespace

Matrix build_chain(int num_states, double phi) {
  if (num_states < 2 || num_states > 4)
    throw UnsupportedChain("build_chain: N must be 2, 3 or 4, got " +
                           std::to_string(num_states));
  if (!(phi > 0.0 && phi < 1.0))
    throw ValidationError("build_chain: phi must lie in (0, 1)");
  Matrix p(num_states, std::vector<double>(num_states, 0.0));
  for (int i = 0; i < num_states; ++i) {
    p[i][i] = phi;
    if (i == 0) {
      p[i][1] = 1.0 - phi;
    } else if (i == num_states - 1) {
      p[i][i - 1] = 1.0 - phi;
    } else {
      p[i][i - 1] = (1.0 - phi) / 2.0;
      p[i][i + 1] = (1.0 - phi) / 2.0;
    }
  }
  return p;
}

std::vector<MeanInterval> mean_intervals(int num_states, int module_size) {
  std::vector<double> cuts;
  switch (num_states) {
    case 2: cuts = {0.0, 1.0, 2.0}; break;
    case 3: cuts = {0.0, 0.6, 1.4, 2.0}; break;
    case 4: cuts = {0.0, 0.5, 1.0, 1.5, 2.0}; break;
    default:
      throw UnsupportedChain("mean_intervals: N must be 2, 3 or 4");
  }
  std::vector<MeanInterval> out;
  for (int j = 0; j < num_states; ++j)
    out.push_back({cuts[j] * module_size, cuts[j + 1] * module_size,
                   j == num_states - 1});
  return out;
}

std::vector<Matrix> gen_demand_dists(int num_states, int module_size,
                                     int num_locations, std::uint64_t seed) {
  const auto intervals = mean_intervals(num_states, module_size);
  const int m = 2 * module_size + 1;
  Rng rng(seed);
  std::vector<Matrix> out(num_locations, Matrix(num_states));
  for (int l = 0; l < num_locations; ++l) {
    for (int j = 0; j < num_states; ++j) {
      bool accepted = false;
      for (int draw = 0; draw < kDirichletBudget && !accepted; ++draw) {
        std::vector<double> w(m);
        double total = 0.0;
        for (double& x : w) {
          x = -std::log(rng.uniform_open0());
          total += x;
        }
        double mean = 0.0;
        for (int n = 0; n < m; ++n) {
          w[n] /= total;
          mean += n * w[n];
        }
        if (intervals[j].contains(mean)) {
          out[l][j] = std::move(w);
          accepted = true;
        }
      }
      if (!accepted)
        throw GenerationFailure("gen_demand_dists: rejection budget exceeded");
    }
  }
  return out;
}

int modules_for_locations(int num_locations) {
  return (4 * num_locations + 2) / 3;
}

Instance generate_instance(const GeneratedSpec& spec) {
  ModulationModel model;
  model.transition = build_chain(spec.num_states, spec.phi);
  for (int d = 0; d <= 2 * spec.module_size; ++d) model.outcomes.push_back(d);
  model.demand_pmf = gen_demand_dists(spec.num_states, spec.module_size,
                                      spec.num_locations, spec.demand_seed);
  Instance inst = make_instance(
      spec.num_locations, modules_for_locations(spec.num_locations),
      spec.module_size, 2.0, 1.0, spec.transship_cost, spec.module_move_cost,
      spec.beta, std::move(model));
  inst.horizon = spec.horizon;
  inst.seed = spec.demand_seed;
  inst.prohibitive_cost = spec.prohibitive_cost;
  inst.set_id = spec.set_id;
  inst.staying_probability = spec.phi;
  inst.id = spec.set_id + "-L" + std::to_string(spec.num_locations) + "-G" +
            std::to_string(spec.module_size) + "-N" +
            std::to_string(spec.num_states) + "-phi" +
            format_number(spec.phi) + "-KS" +
            format_number(spec.transship_cost) + "-KM" +
            format_number(spec.module_move_cost);
  inst.validate();
  return inst;
}

std::vector<Instance> gen_set_A(std::uint64_t master_seed) {
  std::vector<Instance> out;
  const int gs[] = {1, 2, 5};
  const int ns[] = {2, 3, 4};
  const double phis[] = {0.75, 0.95};
  for (int g : gs) {
    for (int n : ns) {
      for (int p = 0; p < 2; ++p) {
        const std::uint64_t demand_seed = derive_seed(
            {master_seed, 'A', static_cast<std::uint64_t>(g),
             static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p)});
        for (double ks : kSetACosts) {
          for (double km : kSetACosts) {
            GeneratedSpec spec;
            spec.set_id = "A";
            spec.num_locations = 5;
            spec.module_size = g;
            spec.num_states = n;
            spec.phi = phis[p];
            spec.transship_cost = ks;
            spec.module_move_cost = km;
            spec.prohibitive_cost = 10000.0;
            spec.demand_seed = demand_seed;
            out.push_back(generate_instance(spec));
          }
        }
      }
    }
  }
  return out;
}

std::vector<Instance> gen_set_B(std::uint64_t master_seed) {
  std::vector<Instance> out;
  const int ls[] = {2, 5, 10, 15, 20, 25};
  for (int l : ls) {
    const std::uint64_t demand_seed =
        derive_seed({master_seed, 'B', static_cast<std::uint64_t>(l)});
    for (double ks : kSetBCosts) {
      for (double km : kSetBCosts) {
        GeneratedSpec spec;
        spec.set_id = "B";
        spec.num_locations = l;
        spec.module_size = 1;
        spec.num_states = 3;
        spec.phi = 0.95;
        spec.transship_cost = ks;
        spec.module_move_cost = km;
        spec.prohibitive_cost = 1000.0;
        spec.demand_seed = demand_seed;
        out.push_back(generate_instance(spec));
      }
    }
  }
  return out;
}

}  // namespace mobiprod
