#pragma once

// JSON and CSV formats used by the command-line tool.

#include "thaumakit/bounds.hpp"
#include "thaumakit/measures.hpp"
#include "thaumakit/stabilizer.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace thaumakit::io {

using Json = nlohmann::ordered_json;

/// 9 significant digits; infinities as "inf" / "-inf".
std::string format_number(double v);
/// JSON number rounded to 9 significant digits, or the string "inf" / "-inf" / "nan".
Json number(double v);

/// {"dim": n, "re": [[...]], "im": [[...]]} at full double precision.
Json to_json(const HermitianOperator& h);
/// Inverse of to_json. Throws DomainError naming the offending field.
HermitianOperator hermitian_from_json(const Json& j);
HermitianOperator parse_hermitian(const std::string& text);
HermitianOperator read_hermitian(const std::string& path);

/// Header a1,a2,w for one factor; a1_k,a2_k per factor k otherwise. Lexicographic point order.
void write_wigner_csv(const PhaseSpace& ps, const WignerRep& w, std::ostream& os);
Json wigner_json(const PhaseSpace& ps, const WignerRep& w);

/// {value, gap, iterations, ...}; witnesses only when requested.
Json to_json(const MeasureResult& r, bool witnesses);

/// {"spec": [...], "states": [{"re": [...], "im": [...]}, ...]}
Json to_json(const StabilizerSet& set);

/// Header p1,p2,n_mana,n_thauma_max.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os);
Json sweep_json(const std::vector<SweepRow>& rows);

}  // namespace thaumakit::io
