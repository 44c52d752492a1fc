#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crcc/probability.hpp"

namespace crcc {

/// Which bin search of the encoders is simulated.
///  u1_bin: U1 words drawn from p(u1|w0), searched against (W0, W1);
///  w2_bin: W2 words drawn from p(w2|w0), searched against (W0, W1, U1);
///  u2_bin: U2 words drawn from p(u2|w0), searched against (W0, W1, U1, W2).
enum class BinTarget { u1_bin, w2_bin, u2_bin };

std::string to_string(BinTarget t);
/// Throws InvalidConfig.
BinTarget parse_bin_target(const std::string& name);

/// Variable the codebook is made of, and the sequences it must match.
std::string word_variable(BinTarget t);
VarSet conditioning_variables(BinTarget t);
/// Mutual information the pre-binning excess has to cover, in bits.
double binning_threshold(const JointPmf& pmf, BinTarget t);

inline constexpr double kDefaultEps = 0.15;
inline constexpr double kMaxCodebookExponent = 24.0;

struct SimConfig {
  int n = 8;
  int trials = 1000;
  double eps = kDefaultEps;
  std::uint64_t seed = 1;
  BinTarget which = BinTarget::w2_bin;
  double pre_bin_rate = 0.0;
  double bin_rate = 0.0;

  /// Throws InvalidConfig, or CodebookTooLarge when n * pre_bin_rate > 24.
  void validate() const;
  std::uint64_t num_words() const;
  std::uint64_t num_bins() const;
};

struct Codebook {
  int n = 0;
  std::vector<std::vector<int>> words;  // symbol indices of the word variable
  std::vector<std::uint64_t> bin_of;
  std::uint64_t num_bins = 0;
};

/// Sequences of the conditioning variables (one row of symbols per
/// variable, in conditioning_variables order) drawn i.i.d. from the pmf.
std::vector<std::vector<int>> draw_conditioning(const JointPmf& pmf, const SimConfig& cfg, std::uint64_t trial);

/// Codebook of one trial, superposed on that trial's W0 sequence.
Codebook generate_codebook(const JointPmf& pmf, const SimConfig& cfg, std::uint64_t trial,
                           const std::vector<int>& w0);
/// Codebook of trial 0.
Codebook generate_codebooks(const JointPmf& pmf, const SimConfig& cfg);

/// Robust typicality of the joint empirical distribution of (sequences of
/// `vars`) against the pmf's marginal on `vars`.
bool robustly_typical(const JointPmf& pmf, const VarSet& vars, const std::vector<std::vector<int>>& seqs, double eps);

/// Fraction of trials in which a uniformly chosen bin holds a word jointly
/// typical with the conditioning sequences.
double encode_feasibility(const JointPmf& pmf, const SimConfig& cfg);
std::uint64_t count_successes(const JointPmf& pmf, const SimConfig& cfg);

struct SweepPoint {
  double margin = 0.0;
  double pre_bin_rate = 0.0;
  double success_rate = 0.0;
};

/// One run per margin with pre_bin_rate = bin_rate + threshold + margin. All
/// runs share the seed. Margins must be ascending.
std::vector<SweepPoint> threshold_sweep(const JointPmf& pmf, const SimConfig& base, const std::vector<double>& margins);

/// "margin_bits,success_rate,trials,n,seed" plus one row per point.
std::string sweep_csv(const std::vector<SweepPoint>& curve, const SimConfig& cfg);

}  // namespace crcc
