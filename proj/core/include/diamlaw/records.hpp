#ifndef DIAMLAW_RECORDS_HPP
#define DIAMLAW_RECORDS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "diamlaw/constants.hpp"
#include "diamlaw/experiments.hpp"

// Machine-readable results.  JSON documents carry the full statistics and an
// optional caller-supplied "config" object; CSV tables use a dot decimal
// separator, %.17g numbers and RFC 4180 quoting, with the column order
// listed next to each function.

namespace diamlaw {

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);
/// Quotes the field if it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);
/// Joins fields with commas, quoting as needed, and appends "\n".
std::string csv_row(const std::vector<std::string>& fields);

/// "<experiment>_a<a>_n<n>_seed<seed>", e.g. "limit_a0.5_n200000_seed7".
std::string record_basename(std::string_view experiment, double a, std::size_t n,
                            std::uint64_t seed);

/// {a, I_a, stderr, method, budget, Lambda_a, K_a} plus method diagnostics.
std::string constants_json(const ConstantEstimate& estimate);
/// Parses a record written by constants_json.  Throws std::runtime_error.
ConstantEstimate constants_from_json(std::string_view text);

// `config_json` must be empty or a JSON object; it is embedded verbatim.

std::string to_json(const TailCurve& curve, std::string_view config_json = {});
/// eps,pairs,hits,window_mass,prob,std_error,smoothed,marginal_prob,
/// marginal_std_error,clipped,in_fit,flagged
std::string to_csv(const TailCurve& curve);

std::string to_json(const PoissonSummary& summary, std::string_view config_json = {});
/// replication,stream_index,m_n,rescaled_deficit,pairs_examined,N(t_0),...,N(t_k)
std::string to_csv(const PoissonSummary& summary);

std::string to_json(const LimitLawReport& report, std::string_view config_json = {});
/// replication,stream_index,m_n,deficit,rescaled_deficit,i,j,pairs_examined
std::string to_csv(const LimitLawReport& report);

std::string to_json(const ExponentReport& report, std::string_view config_json = {});
/// mode,n,replication,deficit
std::string to_csv(const ExponentReport& report);

std::string to_json(const ChenSteinReport& report, std::string_view config_json = {});
/// n,eps_n,p,q,b1,b2,b1_scaled,b2_scaled
std::string to_csv(const ChenSteinReport& report);

/// Drops leading lines beginning with '#'.  CSV bodies are compared this way.
std::string csv_body(std::string_view csv);

}  // namespace diamlaw

#endif  // DIAMLAW_RECORDS_HPP
