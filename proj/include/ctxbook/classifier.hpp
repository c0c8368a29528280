#pragma once

#include "ctxbook/distribution.hpp"
#include "ctxbook/empirical_model.hpp"
#include "ctxbook/feasibility.hpp"
#include "ctxbook/limits.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctxbook {

/// Ordered from most to least contextual.
enum class Tier { Strong, Logical, Probabilistic, Noncontextual };

std::string to_string(Tier tier);
/// Accepts "strong", "logical", "probabilistic", "noncontextual" in any case.
std::optional<Tier> parse_tier(std::string_view text);

/// True when a model of tier `tier` is contextual at level `level` or
/// stronger, e.g. contextual_at(Strong, Probabilistic) is true.
constexpr bool contextual_at(Tier tier, Tier level) { return static_cast<int>(tier) <= static_cast<int>(level); }

/// Global sections s with s|_C in supp(e_C) for every maximal C, in
/// canonical order. Throws CapExceeded.
std::vector<Section> consistent_global_sections(const EmpiricalModel& model, const Limits& limits = {});

bool is_strongly_contextual(const EmpiricalModel& model, const Limits& limits = {});

struct LogicalVerdict {
  bool contextual = false;
  std::optional<Section> witness;  // canonically least support section with no consistent extension
};

LogicalVerdict is_logically_contextual(const EmpiricalModel& model, const Limits& limits = {});

/// The marginal problem as A w = b, w >= 0: one variable per global section,
/// one row per (maximal context, section) pair, then the normalization row.
struct GlobalSystem {
  LinearSystem system;
  std::vector<Section> globals;                 // variable order
  std::vector<std::size_t> row_context;         // maximal-context index of each table row
  std::vector<Section> row_section;             // section of each table row
  [[nodiscard]] std::size_t table_rows() const noexcept { return row_section.size(); }
};

GlobalSystem global_distribution_system(const EmpiricalModel& model, const Limits& limits = {});

struct GlobalDistributionResult {
  std::optional<Distribution> distribution;     // over ε(X)
  std::optional<FarkasCertificate> certificate;  // rows of global_distribution_system
};

GlobalDistributionResult global_distribution(const EmpiricalModel& model, const Limits& limits = {});

struct TierVerdict {
  Tier tier = Tier::Noncontextual;
  std::optional<Section> logical_witness;       // Logical
  std::optional<FarkasCertificate> certificate;  // Probabilistic
  std::optional<Distribution> global;            // Noncontextual
};

TierVerdict classify(const EmpiricalModel& model, const Limits& limits = {});

/// Re-checks the witness carried by a verdict from scratch; returns the
/// problems found (empty when the witness is sound).
std::vector<std::string> check_tier_witness(const EmpiricalModel& model, const TierVerdict& verdict,
                                            const Limits& limits = {});

}  // namespace ctxbook
