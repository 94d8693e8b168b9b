#pragma once

/**
 * @file relay.hpp
 * @brief Energy-harvesting two-hop nano-relay under binary CSK.
 *
 * The source emits N_Tx-S type-A molecules for every 1-bit at the start of
 * its bit interval. The relay absorbs them (SR link), repackages the amino
 * acids into type-B molecules and re-emits them towards the destination (RD
 * link). Interval k covers [kT, (k+1)T).
 */

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "smiet/channel.hpp"

namespace smiet::relay {

struct LineCode {
  double p_one = 0.5;
  int K = 50;
  double T = 0.0;  ///< bit interval [s]

  void validate() const;
};

struct Link {
  channel::LinkGeometry geometry;
  channel::DiffusionMedium medium;
};

enum class RelayMode { kSingleType, kDualType };

enum class ConversionModel {
  kFullDisassembly,        ///< every type-B molecule is rebuilt: (n_B - 1) bonds each
  kIncrementalElongation,  ///< n_A < n_B only: (n_B - n_A) bonds each
};

struct RelayConfig {
  Link sr;
  Link rd;
  channel::MoleculeSpec mol_a;
  channel::MoleculeSpec mol_b;
  std::int64_t n_tx_source = 1000;
  RelayMode mode = RelayMode::kSingleType;
  ConversionModel conversion = ConversionModel::kFullDisassembly;

  void validate() const;

  /// Builds a config whose RD diffusivity follows from the molecule sizes
  /// (equal to the SR one in single-type mode).
  static RelayConfig make(const channel::LinkGeometry& sr_geometry, const channel::DiffusionMedium& sr_medium,
                          const channel::LinkGeometry& rd_geometry, std::int64_t n_a, std::int64_t n_b,
                          std::int64_t n_tx_source = 1000);
};

/// Bit interval at which the SR link has captured half of its asymptotic
/// fraction.
double default_bit_interval(const Link& link);

/// inc[m] = F_c((m + 1) T) - F_c(m T) for m in [0, count).
std::vector<double> interval_increments(const Link& link, double T, int count);

struct HarvestRecord {
  std::vector<std::int64_t> per_interval;
  std::int64_t total = 0;
  std::vector<std::uint8_t> bits;
};

/// N_Tx-S sum_{j <= k_obs} a_j [F_c((k_obs - j + 1) T) - F_c((k_obs - j) T)] on the SR link.
double expected_absorbed_in_interval(const RelayConfig& cfg, std::span<const std::uint8_t> bits, int k_obs, double T);

/// Draws bits i.i.d. Bernoulli(p_one) and samples, per emitted molecule, the
/// interval in which the relay absorbs it (or none within the block).
HarvestRecord simulate_harvest_block(const RelayConfig& cfg, const LineCode& code, std::uint64_t seed);

/// Same, for a fixed bit sequence.
HarvestRecord simulate_harvest_for_bits(const RelayConfig& cfg, std::span<const std::uint8_t> bits, double T,
                                        std::uint64_t seed);

enum class HarvestStatistic { kBlockTotal, kLastInterval };

struct HarvestSamples {
  std::vector<double> samples;         ///< one per iteration
  std::int64_t total_harvested = 0;    ///< pooled over iterations
  std::int64_t total_emitted = 0;      ///< n_tx_source times the number of 1-bits

  double harvest_ratio() const;
};

/// One sample per iteration; iteration i uses an independent derived stream.
HarvestSamples sample_harvest_statistic(const RelayConfig& cfg, const LineCode& code, int iterations,
                                             std::uint64_t master_seed, unsigned threads = 1,
                                             HarvestStatistic statistic = HarvestStatistic::kBlockTotal);

struct Conversion {
  std::int64_t emittable = 0;         ///< type-B molecules
  double energy_cost = 0.0;           ///< J
  std::int64_t leftover_amino_acids = 0;
};

/// Repackages harvested type-A molecules (plus any banked amino acids) into
/// type-B molecules: emittable = floor((harvested n_A + bank) / n_B).
Conversion convert_molecules(std::int64_t harvested, std::int64_t n_a, std::int64_t n_b, double phi,
                             ConversionModel model = ConversionModel::kFullDisassembly,
                             std::int64_t banked_amino_acids = 0);

struct RetransmitPolicy {
  std::int64_t threshold = 0;
  std::optional<std::int64_t> budget;  ///< max molecules per interval; unlimited when empty
};

struct PolicyOutcome {
  std::vector<std::uint8_t> transmitted;
  std::vector<std::int64_t> sent;
  std::vector<std::int64_t> reservoir;  ///< after each interval's decision
  std::int64_t final_reservoir = 0;
};

/// Molecules arriving in each interval enter a reservoir; the relay sends
/// min(reservoir, budget) in interval k only when reservoir >= threshold and
/// want_send[k] (all intervals when want_send is empty).
PolicyOutcome relay_retransmit_policy(std::span<const std::int64_t> arrivals, const RetransmitPolicy& policy,
                                      std::span<const std::uint8_t> want_send = {});
PolicyOutcome relay_retransmit_policy(const HarvestRecord& record, const RetransmitPolicy& policy);

/// Expected destination counts over `intervals` intervals when the relay
/// emits emissions[k] molecules at time (k + 1) T.
std::vector<double> expected_rd_profile(const RelayConfig& cfg, std::span<const std::int64_t> emissions, double T,
                                        int intervals);

struct DecodeThresholds {
  std::optional<double> relay;        ///< default: half the expected bit-1 count at the relay
  std::optional<double> destination;  ///< default: half the expected bit-1 count at the destination
};

struct EndToEndResult {
  HarvestRecord sr;
  std::vector<std::uint8_t> relay_decoded;
  std::vector<std::int64_t> converted;          ///< type-B molecules made per interval
  double conversion_energy = 0.0;               ///< J
  PolicyOutcome policy;
  std::vector<std::int64_t> destination_counts; ///< K + 1 intervals; bit k is read from interval k + 1
  std::vector<std::uint8_t> decoded;
  int bit_errors = 0;
  double relay_threshold = 0.0;
  double destination_threshold = 0.0;
};

EndToEndResult end_to_end_block_sim(const RelayConfig& cfg, const LineCode& code, const RetransmitPolicy& policy,
                                    std::uint64_t seed, const DecodeThresholds& thresholds = {});

}  // namespace smiet::relay
