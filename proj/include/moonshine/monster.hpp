#pragma once

#include "moonshine/chartab.hpp"
#include "moonshine/traces.hpp"

namespace moonshine {

inline std::vector<ClassSpec> class_specs(const CharacterTable& t)
{
  std::vector<ClassSpec> out;
  for (std::size_t g = 0; g < t.classes.size(); ++g)
    out.push_back({t.classes[g].name, parse_group_symbol(t.classes[g].group_symbol), t.classes[t.power(g, 2)].name});
  return out;
}

// exact T_g through q^n_max for every class of the table
inline std::map<std::string, ZSeries> monster_traces(const CharacterTable& t, std::int64_t n_max, const PrecisionConfig& cfg,
                                                     std::vector<SeedReport>* report = nullptr)
{
  auto specs = class_specs(t);
  auto seeds = replication_seeds(specs, cfg, report);
  return mckay_thompson_series(specs, n_max, seeds);
}

} // namespace moonshine
