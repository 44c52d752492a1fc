#include "crcc/binning.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "crcc/bounds.hpp"
#include "crcc/errors.hpp"

namespace crcc {

namespace {

// Counter-based generator: every draw is a pure function of its key, so the
// streams of different trials never depend on evaluation order.
enum Domain : std::uint64_t { conditioning = 1, word_symbol = 2, bin_assignment = 3, chosen_bin = 4 };

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t key(std::uint64_t seed, std::uint64_t trial, Domain d, std::uint64_t index) {
  return mix(mix(mix(mix(seed) ^ trial) ^ d) ^ index);
}

double uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

int sample(const Eigen::VectorXd& p, double u) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<int>(i);
  }
  for (Eigen::Index i = p.size(); i-- > 0;) {
    if (p[i] > 0.0) return static_cast<int>(i);
  }
  return 0;
}

// Row-major strides of the marginal on `vars` (pmf order), per listed var.
struct MarginalIndex {
  std::uint64_t mask = 0;
  std::vector<std::size_t> stride;  // parallel to the listed variables
  std::vector<int> size;
  std::size_t cells = 1;
};

MarginalIndex marginal_index(const JointPmf& pmf, const VarSet& vars) {
  MarginalIndex m;
  m.mask = pmf.mask_of(vars);
  std::vector<std::size_t> by_pos(pmf.num_variables(), 0);
  for (std::size_t k = pmf.num_variables(); k-- > 0;) {
    if (m.mask >> k & 1U) {
      by_pos[k] = m.cells;
      m.cells *= static_cast<std::size_t>(pmf.variables()[k].size);
    }
  }
  for (const auto& v : vars) {
    m.stride.push_back(by_pos[pmf.index_of(v)]);
    m.size.push_back(pmf.size_of(v));
  }
  return m;
}

}  // namespace

std::string to_string(BinTarget t) {
  switch (t) {
    case BinTarget::u1_bin: return "u1_bin";
    case BinTarget::w2_bin: return "w2_bin";
    case BinTarget::u2_bin: return "u2_bin";
  }
  return "unknown";
}

BinTarget parse_bin_target(const std::string& name) {
  for (auto t : {BinTarget::u1_bin, BinTarget::w2_bin, BinTarget::u2_bin}) {
    if (to_string(t) == name) return t;
  }
  throw InvalidConfig("unknown bin search " + name + " (expected u1_bin, w2_bin or u2_bin)");
}

std::string word_variable(BinTarget t) {
  switch (t) {
    case BinTarget::u1_bin: return "U1";
    case BinTarget::w2_bin: return "W2";
    case BinTarget::u2_bin: return "U2";
  }
  return "";
}

VarSet conditioning_variables(BinTarget t) {
  switch (t) {
    case BinTarget::u1_bin: return {"W0", "W1"};
    case BinTarget::w2_bin: return {"W0", "W1", "U1"};
    case BinTarget::u2_bin: return {"W0", "W1", "U1", "W2"};
  }
  return {};
}

double binning_threshold(const JointPmf& pmf, BinTarget t) {
  const auto th = binning_thresholds(pmf);
  switch (t) {
    case BinTarget::u1_bin: return th.u1;
    case BinTarget::w2_bin: return th.w2;
    case BinTarget::u2_bin: return th.u2;
  }
  return 0.0;
}

void SimConfig::validate() const {
  if (n < 1) throw InvalidConfig("block length must be positive");
  if (trials < 1) throw InvalidConfig("trial count must be positive");
  if (!(eps > 0.0)) throw InvalidConfig("typicality slack must be positive");
  if (!std::isfinite(bin_rate) || bin_rate < 0.0) throw InvalidConfig("bin rate must be non-negative");
  if (!std::isfinite(pre_bin_rate) || pre_bin_rate < bin_rate) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "pre-binning rate %.6g is below the bin rate %.6g", pre_bin_rate, bin_rate);
    throw InvalidConfig(buf);
  }
  if (n * pre_bin_rate > kMaxCodebookExponent) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "codebook of 2^%.4g words exceeds the 2^24 cap", n * pre_bin_rate);
    throw CodebookTooLarge(buf);
  }
}

std::uint64_t SimConfig::num_words() const {
  return static_cast<std::uint64_t>(std::llround(std::exp2(n * pre_bin_rate)));
}

std::uint64_t SimConfig::num_bins() const {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(std::exp2(n * bin_rate))));
}

std::vector<std::vector<int>> draw_conditioning(const JointPmf& pmf, const SimConfig& cfg, std::uint64_t trial) {
  const VarSet vars = conditioning_variables(cfg.which);
  const auto idx = marginal_index(pmf, vars);
  const Eigen::VectorXd p = pmf.marginal_probs(idx.mask);
  std::vector<std::vector<int>> seqs(vars.size(), std::vector<int>(static_cast<std::size_t>(cfg.n)));
  for (int i = 0; i < cfg.n; ++i) {
    const auto cell = static_cast<std::size_t>(
        sample(p, uniform(key(cfg.seed, trial, conditioning, static_cast<std::uint64_t>(i)))));
    for (std::size_t k = 0; k < vars.size(); ++k) {
      seqs[k][static_cast<std::size_t>(i)] = static_cast<int>(cell / idx.stride[k] % static_cast<std::size_t>(idx.size[k]));
    }
  }
  return seqs;
}

namespace {

// p(word | w0) as one probability row per W0 symbol.
std::vector<Eigen::VectorXd> word_given_w0(const JointPmf& pmf, const std::string& word) {
  const auto idx = marginal_index(pmf, {"W0", word});
  const Eigen::VectorXd joint = pmf.marginal_probs(idx.mask);
  const int w0_size = pmf.size_of("W0");
  const int w_size = pmf.size_of(word);
  std::vector<Eigen::VectorXd> rows;
  for (int a = 0; a < w0_size; ++a) {
    Eigen::VectorXd row(w_size);
    for (int b = 0; b < w_size; ++b) {
      row[b] = joint[static_cast<Eigen::Index>(static_cast<std::size_t>(a) * idx.stride[0] +
                                               static_cast<std::size_t>(b) * idx.stride[1])];
    }
    const double total = row.sum();
    if (total > 0.0) {
      row /= total;
    } else {
      row.setConstant(1.0 / w_size);
    }
    rows.push_back(row);
  }
  return rows;
}

void fill_word(std::vector<int>& out, const std::vector<Eigen::VectorXd>& rows, const std::vector<int>& w0,
               const SimConfig& cfg, std::uint64_t trial, std::uint64_t j) {
  const auto n = static_cast<std::uint64_t>(cfg.n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out[i] = sample(rows[static_cast<std::size_t>(w0[i])], uniform(key(cfg.seed, trial, word_symbol, j * n + i)));
  }
}

std::uint64_t bin_of_word(const SimConfig& cfg, std::uint64_t trial, std::uint64_t j, std::uint64_t bins) {
  return key(cfg.seed, trial, bin_assignment, j) % bins;
}

}  // namespace

Codebook generate_codebook(const JointPmf& pmf, const SimConfig& cfg, std::uint64_t trial,
                           const std::vector<int>& w0) {
  cfg.validate();
  const auto rows = word_given_w0(pmf, word_variable(cfg.which));
  Codebook book;
  book.n = cfg.n;
  book.num_bins = cfg.num_bins();
  const auto m = cfg.num_words();
  book.words.assign(m, std::vector<int>(static_cast<std::size_t>(cfg.n)));
  book.bin_of.resize(m);
  for (std::uint64_t j = 0; j < m; ++j) {
    fill_word(book.words[j], rows, w0, cfg, trial, j);
    book.bin_of[j] = bin_of_word(cfg, trial, j, book.num_bins);
  }
  return book;
}

Codebook generate_codebooks(const JointPmf& pmf, const SimConfig& cfg) {
  cfg.validate();
  return generate_codebook(pmf, cfg, 0, draw_conditioning(pmf, cfg, 0).front());
}

bool robustly_typical(const JointPmf& pmf, const VarSet& vars, const std::vector<std::vector<int>>& seqs, double eps) {
  const auto idx = marginal_index(pmf, vars);
  const Eigen::VectorXd p = pmf.marginal_probs(idx.mask);
  const std::size_t n = seqs.front().size();
  std::vector<std::size_t> counts(idx.cells, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cell = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) cell += static_cast<std::size_t>(seqs[k][i]) * idx.stride[k];
    ++counts[cell];
  }
  for (std::size_t c = 0; c < idx.cells; ++c) {
    const double pc = p[static_cast<Eigen::Index>(c)];
    const double pi = static_cast<double>(counts[c]) / static_cast<double>(n);
    if (pc <= 0.0) {
      if (counts[c] != 0) return false;
    } else if (std::abs(pi - pc) > eps * pc) {
      return false;
    }
  }
  return true;
}

std::uint64_t count_successes(const JointPmf& pmf, const SimConfig& cfg) {
  cfg.validate();
  VarSet vars = conditioning_variables(cfg.which);
  const std::string word = word_variable(cfg.which);
  vars.push_back(word);
  const auto rows = word_given_w0(pmf, word);
  const auto m = cfg.num_words();
  const auto bins = cfg.num_bins();

  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < static_cast<std::uint64_t>(cfg.trials); ++t) {
    auto seqs = draw_conditioning(pmf, cfg, t);
    // A jointly typical pair needs typical conditioning sequences.
    {
      const VarSet cond(vars.begin(), vars.end() - 1);
      if (!robustly_typical(pmf, cond, seqs, cfg.eps)) continue;
    }
    const std::uint64_t target = key(cfg.seed, t, chosen_bin, 0) % bins;
    seqs.emplace_back(static_cast<std::size_t>(cfg.n));
    for (std::uint64_t j = 0; j < m; ++j) {
      if (bin_of_word(cfg, t, j, bins) != target) continue;
      fill_word(seqs.back(), rows, seqs.front(), cfg, t, j);
      if (robustly_typical(pmf, vars, seqs, cfg.eps)) {
        ++successes;
        break;
      }
    }
  }
  return successes;
}

double encode_feasibility(const JointPmf& pmf, const SimConfig& cfg) {
  return static_cast<double>(count_successes(pmf, cfg)) / static_cast<double>(cfg.trials);
}

std::vector<SweepPoint> threshold_sweep(const JointPmf& pmf, const SimConfig& base, const std::vector<double>& margins) {
  for (std::size_t i = 1; i < margins.size(); ++i) {
    if (margins[i] < margins[i - 1]) throw InvalidConfig("margins must be ascending");
  }
  const double threshold = binning_threshold(pmf, base.which);
  std::vector<SimConfig> configs;
  for (double margin : margins) {
    SimConfig cfg = base;
    cfg.pre_bin_rate = base.bin_rate + threshold + margin;
    cfg.validate();
    configs.push_back(cfg);
  }
  std::vector<SweepPoint> curve;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    curve.push_back({margins[i], configs[i].pre_bin_rate, encode_feasibility(pmf, configs[i])});
  }
  return curve;
}

std::string sweep_csv(const std::vector<SweepPoint>& curve, const SimConfig& cfg) {
  std::ostringstream out;
  out << "margin_bits,success_rate,trials,n,seed\n";
  char buf[128];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%d,%d,%llu\n", p.margin == 0.0 ? 0.0 : p.margin, p.success_rate,
                  cfg.trials, cfg.n, static_cast<unsigned long long>(cfg.seed));
    out << buf;
  }
  return out.str();
}

}  // namespace crcc
