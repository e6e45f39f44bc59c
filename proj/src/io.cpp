#include "thaumakit/io.hpp"

#include "thaumakit/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace thaumakit::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

Json number(double v) {
  if (!std::isfinite(v)) return format_number(v);
  return std::stod(format_number(v));
}

Json to_json(const HermitianOperator& h) {
  const int n = h.dim();
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < n; ++i) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (int j = 0; j < n; ++j) {
      rr.push_back(h(i, j).real());
      ir.push_back(h(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  Json out;
  out["dim"] = n;
  out["re"] = re;
  out["im"] = im;
  return out;
}

namespace {

RMatrix read_block(const Json& j, const char* field, int n) {
  if (!j.contains(field)) throw DomainError(std::string("state JSON: missing field '") + field + "'");
  const Json& rows = j.at(field);
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw DomainError(std::string("state JSON: field '") + field + "' must be an array of " + std::to_string(n) +
                      " rows");
  }
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw DomainError(std::string("state JSON: field '") + field + "' row " + std::to_string(i) + " must have " +
                        std::to_string(n) + " entries");
    }
    for (int k = 0; k < n; ++k) {
      const Json& x = row[static_cast<std::size_t>(k)];
      if (!x.is_number()) {
        throw DomainError(std::string("state JSON: field '") + field + "' entry [" + std::to_string(i) + "][" +
                          std::to_string(k) + "] is not a number");
      }
      m(i, k) = x.get<double>();
    }
  }
  return m;
}

}  // namespace

HermitianOperator hermitian_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("state JSON: expected an object with fields dim, re, im");
  if (!j.contains("dim")) throw DomainError("state JSON: missing field 'dim'");
  const Json& dim = j.at("dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw DomainError("state JSON: field 'dim' must be a positive integer");
  }
  const int n = static_cast<int>(dim.get<long long>());
  const RMatrix re = read_block(j, "re", n);
  const RMatrix im = read_block(j, "im", n);
  CMatrix m(n, n);
  m.real() = re;
  m.imag() = im;
  if (max_abs_diff(m, m.adjoint()) > 1e-9) throw DomainError("state JSON: fields 're'/'im' are not Hermitian");
  return HermitianOperator(m);
}

HermitianOperator parse_hermitian(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("state JSON: ") + e.what());
  }
  return hermitian_from_json(j);
}

HermitianOperator read_hermitian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open state file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_hermitian(ss.str());
}

namespace {

std::vector<std::string> point_columns(const PhaseSpace& ps) {
  const auto& f = ps.spec().factors();
  std::vector<std::string> cols;
  if (f.size() == 1) return {"a1", "a2"};
  for (std::size_t k = 0; k < f.size(); ++k) {
    cols.push_back("a1_" + std::to_string(k + 1));
    cols.push_back("a2_" + std::to_string(k + 1));
  }
  return cols;
}

}  // namespace

void write_wigner_csv(const PhaseSpace& ps, const WignerRep& w, std::ostream& os) {
  for (const auto& c : point_columns(ps)) os << c << ',';
  os << "w\n";
  for (int u = 0; u < ps.num_points(); ++u) {
    for (const auto& [a1, a2] : ps.point_at(u)) os << a1 << ',' << a2 << ',';
    os << format_number(w.values(u)) << '\n';
  }
}

Json wigner_json(const PhaseSpace& ps, const WignerRep& w) {
  Json pts = Json::array();
  for (int u = 0; u < ps.num_points(); ++u) {
    Json a = Json::array();
    for (const auto& [a1, a2] : ps.point_at(u)) a.push_back(Json::array({a1, a2}));
    Json row;
    row["point"] = a;
    row["w"] = number(w.values(u));
    pts.push_back(row);
  }
  Json out;
  out["spec"] = ps.spec().factors();
  out["points"] = pts;
  out["sum"] = number(w.sum());
  return out;
}

Json to_json(const MeasureResult& r, bool witnesses) {
  Json out;
  out["value"] = number(r.value);
  out["gap"] = number(r.gap);
  out["iterations"] = r.iterations;
  out["primal_value"] = number(r.primal_value);
  out["dual_value"] = number(r.dual_value);
  if (r.perturbation != 0.0) out["perturbation"] = number(r.perturbation);
  out["converged"] = r.converged;
  if (witnesses) {
    if (r.primal_witness) out["primal_witness"] = to_json(*r.primal_witness);
    if (r.dual_witness) out["dual_witness"] = to_json(*r.dual_witness);
  }
  return out;
}

Json to_json(const StabilizerSet& set) {
  Json states = Json::array();
  for (const auto& s : set.states) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
      re.push_back(s.amplitudes()(i).real());
      im.push_back(s.amplitudes()(i).imag());
    }
    Json v;
    v["re"] = re;
    v["im"] = im;
    states.push_back(v);
  }
  Json out;
  out["spec"] = set.spec.factors();
  out["states"] = states;
  return out;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "p1,p2,n_mana,n_thauma_max\n";
  for (const auto& r : rows) {
    os << format_number(r.p1) << ',' << format_number(r.p2) << ',' << format_number(r.n_mana) << ','
       << format_number(r.n_thauma_max) << '\n';
  }
}

Json sweep_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["p1"] = number(r.p1);
    row["p2"] = number(r.p2);
    row["n_mana"] = number(r.n_mana);
    row["n_thauma_max"] = number(r.n_thauma_max);
    out.push_back(row);
  }
  return out;
}

}  // namespace thaumakit::io
