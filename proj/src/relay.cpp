#include "smiet/relay.hpp"

#include <algorithm>
#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/binomial_distribution.hpp>
#include <cmath>

#include "smiet/errors.hpp"
#include "smiet/rng.hpp"

namespace smiet::relay {
namespace {

constexpr std::uint64_t kBitsStream = 0x42495453;     // "BITS"
constexpr std::uint64_t kSrStream = 0x53524c4b;       // "SRLK"
constexpr std::uint64_t kRdStream = 0x52444c4b;       // "RDLK"
constexpr std::uint64_t kSampleStream = 0x534d504c;   // "SMPL"

// Distributes `count` molecules released at interval `start` over intervals
// [start, out.size()) with per-interval probabilities inc[m]; the leftover
// mass is "not absorbed within the block". Sequential conditional binomials
// give an exact multinomial draw.
void scatter_molecules(std::int64_t count, std::size_t start, std::span<const double> inc,
                       std::vector<std::int64_t>& out, rng::Xoshiro256pp& gen) {
  double mass_left = 1.0;
  std::int64_t remaining = count;
  for (std::size_t k = start; k < out.size() && remaining > 0; ++k) {
    const double p = inc[k - start];
    const double q = mass_left > 0.0 ? std::clamp(p / mass_left, 0.0, 1.0) : 0.0;
    boost::random::binomial_distribution<std::int64_t, double> binom(remaining, q);
    const std::int64_t absorbed = binom(gen);
    out[k] += absorbed;
    remaining -= absorbed;
    mass_left -= p;
  }
}

}  // namespace

void LineCode::validate() const {
  if (!(p_one >= 0.0 && p_one <= 1.0)) throw ConfigError("p_one must lie in [0, 1]");
  if (K < 1) throw ConfigError("block length K must be >= 1");
  if (!(T > 0.0)) throw ConfigError("bit interval T must be positive");
}

void RelayConfig::validate() const {
  try {
    sr.geometry.validate();
    sr.medium.validate();
    rd.geometry.validate();
    rd.medium.validate();
    mol_a.validate();
    mol_b.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (n_tx_source < 0) throw ConfigError("n_tx_source must be >= 0");
  const double expected_rd = channel::diffusivity_for_size(sr.medium.D, static_cast<double>(mol_a.n),
                                                           static_cast<double>(mol_b.n));
  if (mode == RelayMode::kSingleType) {
    if (mol_a.n != mol_b.n) throw ConfigError("single-type relay needs identical molecule types");
    if (rd.medium.D != sr.medium.D) throw ConfigError("single-type relay needs D_B = D_A");
  } else if (std::abs(rd.medium.D - expected_rd) > 1e-12 * expected_rd) {
    throw ConfigError("dual-type relay needs D_B = D_A (n_A / n_B)^(1/3)");
  }
}

RelayConfig RelayConfig::make(const channel::LinkGeometry& sr_geometry, const channel::DiffusionMedium& sr_medium,
                              const channel::LinkGeometry& rd_geometry, std::int64_t n_a, std::int64_t n_b,
                              std::int64_t n_tx_source) {
  RelayConfig cfg;
  cfg.sr = {sr_geometry, sr_medium};
  cfg.mol_a.n = n_a;
  cfg.mol_b.n = n_b;
  cfg.n_tx_source = n_tx_source;
  cfg.mode = n_a == n_b ? RelayMode::kSingleType : RelayMode::kDualType;
  channel::DiffusionMedium rd_medium = sr_medium;
  if (cfg.mode == RelayMode::kDualType) {
    rd_medium.D = channel::diffusivity_for_size(sr_medium.D, static_cast<double>(n_a), static_cast<double>(n_b));
  }
  cfg.rd = {rd_geometry, rd_medium};
  return cfg;
}

double default_bit_interval(const Link& link) {
  return channel::interval_for_capture_ratio(link.geometry, link.medium, 0.5);
}

std::vector<double> interval_increments(const Link& link, double T, int count) {
  std::vector<double> inc(static_cast<std::size_t>(std::max(count, 0)));
  double previous = 0.0;
  for (int m = 0; m < count; ++m) {
    const double next = channel::capture_fraction(link.geometry, link.medium, (m + 1) * T);
    inc[static_cast<std::size_t>(m)] = std::max(0.0, next - previous);
    previous = next;
  }
  return inc;
}

double expected_absorbed_in_interval(const RelayConfig& cfg, std::span<const std::uint8_t> bits, int k_obs, double T) {
  if (bits.empty()) throw DomainError("expected_absorbed_in_interval: empty bit sequence");
  if (k_obs < 0 || static_cast<std::size_t>(k_obs) >= bits.size()) throw DomainError("k_obs out of range");
  const auto inc = interval_increments(cfg.sr, T, k_obs + 1);
  double sum = 0.0;
  for (int j = 0; j <= k_obs; ++j) {
    if (bits[static_cast<std::size_t>(j)] != 0) sum += inc[static_cast<std::size_t>(k_obs - j)];
  }
  return static_cast<double>(cfg.n_tx_source) * sum;
}

HarvestRecord simulate_harvest_for_bits(const RelayConfig& cfg, std::span<const std::uint8_t> bits, double T,
                                        std::uint64_t seed) {
  cfg.validate();
  HarvestRecord record;
  record.bits.assign(bits.begin(), bits.end());
  record.per_interval.assign(bits.size(), 0);
  const auto inc = interval_increments(cfg.sr, T, static_cast<int>(bits.size()));
  rng::Xoshiro256pp gen(rng::derive_seed(seed, {kSrStream}));
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != 0) scatter_molecules(cfg.n_tx_source, j, inc, record.per_interval, gen);
  }
  for (auto c : record.per_interval) record.total += c;
  return record;
}

HarvestRecord simulate_harvest_block(const RelayConfig& cfg, const LineCode& code, std::uint64_t seed) {
  code.validate();
  rng::Xoshiro256pp gen(rng::derive_seed(seed, {kBitsStream}));
  boost::random::bernoulli_distribution<double> coin(code.p_one);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(code.K));
  for (auto& b : bits) b = coin(gen) ? 1 : 0;
  return simulate_harvest_for_bits(cfg, bits, code.T, seed);
}

double HarvestSamples::harvest_ratio() const {
  return total_emitted == 0 ? 0.0 : static_cast<double>(total_harvested) / static_cast<double>(total_emitted);
}

HarvestSamples sample_harvest_statistic(const RelayConfig& cfg, const LineCode& code, int iterations,
                                        std::uint64_t master_seed, unsigned threads, HarvestStatistic statistic) {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  HarvestSamples out;
  out.samples.resize(static_cast<std::size_t>(iterations));
  std::vector<std::int64_t> harvested(out.samples.size());
  std::vector<std::int64_t> ones(out.samples.size());
  rng::parallel_for(out.samples.size(), threads, [&](std::size_t i) {
    const auto record = simulate_harvest_block(cfg, code, rng::derive_seed(master_seed, {kSampleStream, i}));
    out.samples[i] = statistic == HarvestStatistic::kBlockTotal ? static_cast<double>(record.total)
                                                                : static_cast<double>(record.per_interval.back());
    harvested[i] = record.total;
    ones[i] = std::count(record.bits.begin(), record.bits.end(), std::uint8_t{1});
  });
  for (std::size_t i = 0; i < harvested.size(); ++i) {
    out.total_harvested += harvested[i];
    out.total_emitted += ones[i] * cfg.n_tx_source;
  }
  return out;
}

Conversion convert_molecules(std::int64_t harvested, std::int64_t n_a, std::int64_t n_b, double phi,
                             ConversionModel model, std::int64_t banked_amino_acids) {
  if (harvested < 0 || banked_amino_acids < 0) throw DomainError("molecule counts must be non-negative");
  if (n_a < 1 || n_b < 1) throw DomainError("amino-acid counts must be >= 1");
  const std::int64_t amino = harvested * n_a + banked_amino_acids;
  Conversion out;
  out.emittable = amino / n_b;
  out.leftover_amino_acids = amino - out.emittable * n_b;
  if (n_a == n_b) return out;
  const bool elongate = model == ConversionModel::kIncrementalElongation && n_a < n_b;
  const std::int64_t bonds_per_molecule = elongate ? n_b - n_a : n_b - 1;
  out.energy_cost = phi * static_cast<double>(std::max<std::int64_t>(0, bonds_per_molecule * out.emittable));
  return out;
}

PolicyOutcome relay_retransmit_policy(std::span<const std::int64_t> arrivals, const RetransmitPolicy& policy,
                                      std::span<const std::uint8_t> want_send) {
  if (policy.threshold < 0) throw DomainError("retransmit threshold must be >= 0");
  if (!want_send.empty() && want_send.size() != arrivals.size()) throw DomainError("send mask length mismatch");
  PolicyOutcome out;
  out.transmitted.assign(arrivals.size(), 0);
  out.sent.assign(arrivals.size(), 0);
  out.reservoir.assign(arrivals.size(), 0);
  std::int64_t reservoir = 0;
  for (std::size_t k = 0; k < arrivals.size(); ++k) {
    reservoir += arrivals[k];
    const bool wanted = want_send.empty() || want_send[k] != 0;
    if (wanted && reservoir >= policy.threshold) {
      const std::int64_t amount = policy.budget ? std::min(reservoir, *policy.budget) : reservoir;
      out.transmitted[k] = 1;
      out.sent[k] = amount;
      reservoir -= amount;
    }
    out.reservoir[k] = reservoir;
  }
  out.final_reservoir = reservoir;
  return out;
}

PolicyOutcome relay_retransmit_policy(const HarvestRecord& record, const RetransmitPolicy& policy) {
  return relay_retransmit_policy(record.per_interval, policy);
}

std::vector<double> expected_rd_profile(const RelayConfig& cfg, std::span<const std::int64_t> emissions, double T,
                                        int intervals) {
  std::vector<double> profile(static_cast<std::size_t>(std::max(intervals, 0)), 0.0);
  const auto inc = interval_increments(cfg.rd, T, intervals);
  for (std::size_t k = 0; k < emissions.size(); ++k) {
    for (std::size_t m = k + 1; m < profile.size(); ++m) {
      profile[m] += static_cast<double>(emissions[k]) * inc[m - k - 1];
    }
  }
  return profile;
}

EndToEndResult end_to_end_block_sim(const RelayConfig& cfg, const LineCode& code, const RetransmitPolicy& policy,
                                    std::uint64_t seed, const DecodeThresholds& thresholds) {
  cfg.validate();
  code.validate();
  EndToEndResult res;
  res.sr = simulate_harvest_block(cfg, code, seed);
  const auto K = static_cast<std::size_t>(code.K);

  const double sr_first = channel::capture_fraction(cfg.sr.geometry, cfg.sr.medium, code.T);
  res.relay_threshold = thresholds.relay.value_or(0.5 * static_cast<double>(cfg.n_tx_source) * sr_first);
  if (!(res.relay_threshold > 0.0)) throw ConfigError("relay decode threshold must be positive");
  res.relay_decoded.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    res.relay_decoded[k] = static_cast<double>(res.sr.per_interval[k]) >= res.relay_threshold ? 1 : 0;
  }

  res.converted.resize(K);
  std::int64_t bank = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const auto conv = convert_molecules(res.sr.per_interval[k], cfg.mol_a.n, cfg.mol_b.n, cfg.mol_b.phi,
                                        cfg.conversion, bank);
    res.converted[k] = conv.emittable;
    res.conversion_energy += conv.energy_cost;
    bank = conv.leftover_amino_acids;
  }
  res.policy = relay_retransmit_policy(res.converted, policy, res.relay_decoded);

  // RD link: emissions at the end of interval k land in destination
  // intervals k + 1 .. K.
  res.destination_counts.assign(K + 1, 0);
  const auto rd_inc = interval_increments(cfg.rd, code.T, static_cast<int>(K));
  rng::Xoshiro256pp gen(rng::derive_seed(seed, {kRdStream}));
  for (std::size_t k = 0; k < K; ++k) {
    if (res.policy.sent[k] > 0) scatter_molecules(res.policy.sent[k], k + 1, rd_inc, res.destination_counts, gen);
  }

  double nominal_emission = static_cast<double>(cfg.n_tx_source) * sr_first * static_cast<double>(cfg.mol_a.n) /
                            static_cast<double>(cfg.mol_b.n);
  if (policy.budget) nominal_emission = std::min(nominal_emission, static_cast<double>(*policy.budget));
  const double rd_first = channel::capture_fraction(cfg.rd.geometry, cfg.rd.medium, code.T);
  res.destination_threshold = thresholds.destination.value_or(0.5 * nominal_emission * rd_first);
  if (!(res.destination_threshold > 0.0)) throw ConfigError("destination decode threshold must be positive");
  res.decoded.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    res.decoded[k] = static_cast<double>(res.destination_counts[k + 1]) >= res.destination_threshold ? 1 : 0;
    if (res.decoded[k] != res.sr.bits[k]) ++res.bit_errors;
  }
  return res;
}

}  // namespace smiet::relay
