#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "chernweil/connection.hpp"

namespace chernweil {

/// A named scenario family. Every generator produces a two-parameter sheet
/// with fixed endpoints; path() is the t-path on the s = 1 slice and
/// connection() its endpoint, so the same family feeds connection-, path- and
/// sheet-level checks.
struct GeneratedFamily {
    ConnectionSheet sheet;

    ConnectionPath path() const { return path_at_s(sheet, 1.0); }
    Connection connection() const { return path_eval(path(), 1.0); }
};

/// Registry entries:
///   abelian_t2        rank-1 flat families A(t) = i(a(t) dx1 + b(t) dx2)
///   commuting_t3/4/5  rank-r flat families from commuting constant matrices
///   perturbed_nonflat random trigonometric families, non-flat, endpoint-fixed
///   flat_sheet_bump   flat sheet inside a commuting family, endpoint-fixed
///                     through an s*t*(1-t) bump profile
GeneratedFamily make_family(const std::string& name, const nlohmann::json& params,
                            const TorusChart& chart, int rank, uint64_t seed);

std::vector<std::string> generator_names();
std::string generator_doc(const std::string& name);

}  // namespace chernweil
