#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "crcc/probability.hpp"

namespace crcc::testing {

// I(A;B|C) = sum p(a,b,c) log p(a,b,c) p(c) / (p(a,c) p(b,c)), summed
// straight off the full tensor with explicit marginal tables.
inline double direct_cmi(const JointPmf& pmf, const VarSet& a, const VarSet& b, const VarSet& c) {
  const auto n = pmf.num_variables();
  auto key = [&](const std::vector<int>& digits, const VarSet& set) {
    long k = 0;
    for (const auto& v : set) k = k * 16 + digits[pmf.index_of(v)];
    return k;
  };
  std::map<long, double> pabc, pac, pbc, pc;
  VarSet ac = a, bc = b, abc = a;
  ac.insert(ac.end(), c.begin(), c.end());
  bc.insert(bc.end(), c.begin(), c.end());
  abc.insert(abc.end(), b.begin(), b.end());
  abc.insert(abc.end(), c.begin(), c.end());
  std::vector<std::vector<int>> all;
  std::vector<int> digits(n, 0);
  for (std::size_t flat = 0; flat < pmf.num_entries(); ++flat) {
    const double p = pmf.at(digits);
    pabc[key(digits, abc)] += p;
    pac[key(digits, ac)] += p;
    pbc[key(digits, bc)] += p;
    pc[key(digits, c)] += p;
    all.push_back(digits);
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < pmf.variables()[k].size) break;
      digits[k] = 0;
    }
  }
  double total = 0.0;
  std::map<long, bool> seen;
  for (const auto& d : all) {
    const long k = key(d, abc);
    if (seen[k]) continue;
    seen[k] = true;
    const double p = pabc[k];
    if (p <= 0.0) continue;
    total += p * std::log2(p * pc[key(d, c)] / (pac[key(d, ac)] * pbc[key(d, bc)]));
  }
  return total;
}

}  // namespace crcc::testing
