#include "thaumakit/cli.hpp"

#include "thaumakit/bounds.hpp"
#include "thaumakit/error.hpp"
#include "thaumakit/io.hpp"
#include "thaumakit/measures.hpp"
#include "thaumakit/stabilizer.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace thaumakit::cli {

namespace {

using io::Json;

struct StateArgs {
  std::string name;
  std::string file;
  std::string factors;
  int copies = 1;
};

struct Options {
  StateArgs state;
  StateArgs other;  // sigma for dh, xi for efficiency / interconversion
  double eps = 0.0;
  int n = 1;
  double p2 = 0.1;
  std::string grid;
  std::string target = "Hplus";
  double tol = 1e-4;
  std::string out;
  std::string format;  // empty: from --out extension, else csv for figure1 and json otherwise
  bool witness = false;
  bool export_set = false;
};

std::vector<int> parse_factors(const std::string& text) {
  std::vector<int> f;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      f.push_back(v);
    } catch (const std::logic_error&) {
      throw DomainError("--factors: cannot parse '" + item + "'");
    }
  }
  if (f.empty()) throw DomainError("--factors: empty list");
  return f;
}

struct LoadedState {
  DimensionSpec spec;
  HermitianOperator rho;
  std::optional<PureState> pure;
};

LoadedState load_state(const StateArgs& a, const char* what) {
  if (a.name.empty() == a.file.empty()) {
    throw DomainError(std::string(what) + ": give exactly one of a state name or a state file");
  }
  if (a.copies < 1) throw DomainError("--copies must be at least 1");
  HermitianOperator rho = HermitianOperator::zero(1);
  std::optional<PureState> pure;
  if (!a.name.empty()) {
    NamedState s = named_state(a.name);
    rho = s.density;
    pure = s.pure;
  } else {
    rho = io::read_hermitian(a.file);
  }
  if (a.copies > 1) {
    rho = kron_power(rho, a.copies);
    pure.reset();
  }
  DimensionSpec spec = a.factors.empty() ? DimensionSpec::from_dimension(rho.dim()) : DimensionSpec(parse_factors(a.factors));
  if (spec.total_dim() != rho.dim()) {
    throw DomainError(std::string(what) + ": --factors " + spec.to_string() + " does not match dimension " +
                      std::to_string(rho.dim()));
  }
  return {spec, rho, pure};
}

// Pure state from a named state, or from a rank-one density matrix.
PureState pure_of(const LoadedState& s) {
  if (s.pure && s.pure->dim() == s.rho.dim()) return *s.pure;
  const Spectrum sp = eigh(s.rho);
  if (std::abs(sp.values(sp.values.size() - 1) - 1.0) > 1e-9) throw DomainError("state is not pure");
  return PureState::normalized(sp.vectors.col(sp.values.size() - 1));
}

std::vector<double> parse_grid(const std::string& text) {
  if (text.empty()) return default_p1_grid();
  auto num = [](const std::string& t) {
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::logic_error&) {
      throw DomainError("--grid: cannot parse '" + t + "'");
    }
  };
  std::vector<double> g;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
      throw DomainError("--grid: expected start:stop:step");
    }
    const double start = num(a), stop = num(b), step = num(c);
    if (!(step > 0) || stop < start) throw DomainError("--grid: need step > 0 and stop >= start");
    const long count = std::lround(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= count; ++k) g.push_back(start + k * step);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) g.push_back(num(item));
  }
  if (g.empty()) throw DomainError("--grid: no points");
  return g;
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw DomainError("--format '" + f + "' is not supported by this command");
}

struct VerifyRow {
  std::string state, measure;
  double computed, expected;
  bool pass;
};

std::vector<VerifyRow> verify_golden() {
  const PhaseSpace ps(DimensionSpec({3}));
  struct Golden {
    const char* name;
    double value;
  };
  const Golden golden[] = {{"Strange", std::log2(5.0 / 3.0)},
                           {"Norrell", std::log2(1.5)},
                           {"Hplus", std::log2(3.0 - std::numbers::sqrt3)},
                           {"T", std::log2(1.0 + 2.0 * std::sin(std::numbers::pi / 18.0))}};
  ThetaOptions tight;
  tight.tol = 1e-7;
  std::vector<VerifyRow> rows;
  for (const Golden& g : golden) {
    const HermitianOperator rho = named_state(g.name).density;
    const double values[3] = {theta_min(ps, rho).value, theta(ps, rho, tight).value, theta_max(ps, rho).value};
    const char* names[3] = {"theta_min", "theta", "theta_max"};
    for (int k = 0; k < 3; ++k) {
      rows.push_back({g.name, names[k], values[k], g.value, std::abs(values[k] - g.value) < 1e-6});
    }
  }
  return rows;
}

void add_state_options(CLI::App* sub, StateArgs& a) {
  sub->add_option("--state", a.name, "named state (Strange, Norrell, Hplus, Hminus, Hi, T, tau_T, ...)");
  sub->add_option("--file", a.file, "state file {\"dim\", \"re\", \"im\"}");
  sub->add_option("--factors", a.factors, "prime factors of the dimension, e.g. 3,3");
  sub->add_option("--copies", a.copies, "tensor power of the state");
}

void add_other_state(CLI::App* sub, StateArgs& a, const std::string& flag, const std::string& desc) {
  sub->add_option("--" + flag, a.name, desc + " (named state)");
  sub->add_option("--" + flag + "-file", a.file, desc + " (state file)");
}

void add_output(CLI::App* sub, Options& o, bool csv) {
  sub->add_option("--out", o.out, "write output to this path");
  sub->add_option("--format", o.format, csv ? "json or csv" : "json");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Qudit magic monotones and distillation bounds", "thaumakit"};
  app.require_subcommand(1, 1);

  auto add = [&](const std::string& verb, const std::string& desc) { return app.add_subcommand(verb, desc); };

  {
    auto* s = add("wigner", "discrete Wigner function of a state");
    add_state_options(s, o.state);
    add_output(s, o, true);
  }
  {
    auto* s = add("mana", "log2 of the Wigner trace norm");
    add_state_options(s, o.state);
    add_output(s, o, false);
  }
  for (const char* verb : {"theta-min", "theta-max"}) {
    auto* s = add(verb, std::string(verb) + " via primal and dual SDPs");
    add_state_options(s, o.state);
    add_output(s, o, false);
    s->add_flag("--witness", o.witness, "include witness operators");
  }
  {
    auto* s = add("theta", "relative entropy thauma");
    add_state_options(s, o.state);
    add_output(s, o, false);
    s->add_option("--tol", o.tol, "duality gap tolerance (bits)");
    s->add_flag("--witness", o.witness, "include the minimizer");
  }
  {
    auto* s = add("dh", "hypothesis testing relative entropy D_H^eps(rho||sigma)");
    add_state_options(s, o.state);
    add_other_state(s, o.other, "sigma", "second argument");
    s->add_option("--eps", o.eps, "type-I error");
    add_output(s, o, false);
    s->add_flag("--witness", o.witness, "include the optimal test");
  }
  {
    auto* s = add("min-dh", "min over W of D_H^eps(rho||sigma)");
    add_state_options(s, o.state);
    s->add_option("--eps", o.eps, "type-I error");
    add_output(s, o, false);
    s->add_flag("--witness", o.witness, "include witnesses");
  }
  {
    auto* s = add("one-shot", "one-shot distillable magic bound and overhead");
    add_state_options(s, o.state);
    s->add_option("--eps", o.eps, "error");
    s->add_option("--target", o.target, "Hplus or T");
    add_output(s, o, false);
  }
  {
    auto* s = add("asymptotic", "asymptotic distillation rate bound");
    add_state_options(s, o.state);
    s->add_option("--target", o.target, "Hplus or T");
    s->add_option("--tol", o.tol, "duality gap tolerance (bits)");
    add_output(s, o, false);
  }
  {
    auto* s = add("second-order", "second-order converse for n copies");
    add_state_options(s, o.state);
    s->add_option("--n", o.n, "number of copies");
    s->add_option("--eps", o.eps, "error, in (0, 1)");
    s->add_option("--target", o.target, "Hplus or T");
    s->add_option("--tol", o.tol, "duality gap tolerance (bits)");
    add_output(s, o, false);
  }
  {
    auto* s = add("efficiency", "efficiency lower bounds for rho -> xi");
    add_state_options(s, o.state);
    add_other_state(s, o.other, "xi", "output state, default Hplus");
    add_output(s, o, false);
  }
  {
    auto* s = add("interconversion", "interconversion rate bound for rho -> xi");
    add_state_options(s, o.state);
    add_other_state(s, o.other, "xi", "output state");
    add_output(s, o, false);
  }
  {
    auto* s = add("figure1", "efficiency bounds for the H-eigenbasis mixture sweep");
    s->add_option("--p2", o.p2, "weight of Hi");
    s->add_option("--grid", o.grid, "p1 values: start:stop:step or a comma list");
    add_output(s, o, true);
  }
  {
    auto* s = add("named-state", "print a named state");
    s->add_option("--state", o.state.name, "state name")->required();
    s->add_option("--copies", o.state.copies, "tensor power of the state");
    add_output(s, o, false);
  }
  {
    auto* s = add("verify-prop2", "recompute the golden closed-form values");
    add_output(s, o, true);
  }
  {
    auto* s = add("stab-fidelity", "max overlap of a pure state with the stabilizer states");
    add_state_options(s, o.state);
    s->add_flag("--export", o.export_set, "print the stabilizer states for --factors instead");
    add_output(s, o, false);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string verb = chosen->get_name();
  if (o.format.empty()) {
    const bool csv_out = o.out.size() >= 4 && o.out.compare(o.out.size() - 4, 4, ".csv") == 0;
    o.format = csv_out || (verb == "figure1" && o.out.empty()) ? "csv" : "json";
  }

  std::ostringstream buf;
  try {
    Json j;
    bool wrote_text = false;
    const MeasureOptions mopts;
    ThetaOptions topts;
    topts.tol = o.tol;
    if (!(o.tol > 0)) throw DomainError("--tol must be positive");

    if (verb == "wigner") {
      require_format(o.format, {"json", "csv"});
      const auto s = load_state(o.state, verb.c_str());
      const PhaseSpace ps(s.spec);
      const WignerRep w = ps.wigner_rep(s.rho);
      if (o.format == "csv") {
        io::write_wigner_csv(ps, w, buf);
        wrote_text = true;
      } else {
        j = io::wigner_json(ps, w);
      }
    } else if (verb == "named-state") {
      require_format(o.format, {"json"});
      HermitianOperator rho = named_state(o.state.name).density;
      if (o.state.copies > 1) rho = kron_power(rho, o.state.copies);
      j = io::to_json(rho);
    } else if (verb == "verify-prop2") {
      require_format(o.format, {"json", "csv"});
      const auto rows = verify_golden();
      bool all = true;
      for (const auto& r : rows) all &= r.pass;
      if (o.format == "csv") {
        buf << "state,measure,computed,expected,delta,pass\n";
        for (const auto& r : rows) {
          buf << r.state << ',' << r.measure << ',' << io::format_number(r.computed) << ','
              << io::format_number(r.expected) << ',' << io::format_number(r.computed - r.expected) << ','
              << (r.pass ? "true" : "false") << '\n';
        }
        wrote_text = true;
      } else {
        Json arr = Json::array();
        for (const auto& r : rows) {
          Json row;
          row["state"] = r.state;
          row["measure"] = r.measure;
          row["computed"] = io::number(r.computed);
          row["expected"] = io::number(r.expected);
          row["delta"] = io::number(r.computed - r.expected);
          row["pass"] = r.pass;
          arr.push_back(row);
        }
        j["rows"] = arr;
        j["pass"] = all;
      }
      if (!all) {
        out << buf.str();
        if (!wrote_text) out << j.dump(2) << '\n';
        err << "error: verify-prop2 found values outside 1e-6\n";
        return 2;
      }
    } else if (verb == "figure1") {
      require_format(o.format, {"json", "csv"});
      const PhaseSpace ps(DimensionSpec({3}));
      const auto rows = figure1_sweep(ps, o.p2, parse_grid(o.grid), mopts);
      if (o.format == "csv") {
        io::write_sweep_csv(rows, buf);
        wrote_text = true;
      } else {
        j = io::sweep_json(rows);
      }
    } else if (verb == "stab-fidelity" && o.export_set) {
      require_format(o.format, {"json"});
      if (o.state.factors.empty()) throw DomainError("--export needs --factors");
      j = io::to_json(stabilizer_states(DimensionSpec(parse_factors(o.state.factors))));
    } else {
      require_format(o.format, {"json"});
      const auto s = load_state(o.state, verb.c_str());
      const PhaseSpace ps(s.spec);
      if (verb == "mana") {
        j["value"] = io::number(mana(ps, s.rho));
      } else if (verb == "theta-min") {
        j = io::to_json(theta_min(ps, s.rho, mopts), o.witness);
      } else if (verb == "theta-max") {
        j = io::to_json(theta_max(ps, s.rho, mopts), o.witness);
      } else if (verb == "theta") {
        j = io::to_json(theta(ps, s.rho, topts), o.witness);
      } else if (verb == "dh") {
        const auto sigma = load_state(StateArgs{o.other.name, o.other.file, o.state.factors, o.state.copies}, "sigma");
        if (sigma.rho.dim() != s.rho.dim()) throw DomainError("dh: rho and sigma dimensions differ");
        j = io::to_json(dh_epsilon(s.rho, sigma.rho, o.eps, mopts), o.witness);
      } else if (verb == "min-dh") {
        j = io::to_json(min_dh_over_w(ps, s.rho, o.eps, mopts), o.witness);
      } else if (verb == "one-shot") {
        const TargetState t = target_state(o.target);
        const double v = one_shot_bound(ps, s.rho, o.eps, t, mopts);
        j["value"] = io::number(v);
        j["overhead"] = io::number(v > 1e-9 ? 1.0 / v : INFINITY);
        j["target"] = t.name;
        j["eps"] = io::number(o.eps);
      } else if (verb == "asymptotic") {
        const TargetState t = target_state(o.target);
        j["value"] = io::number(asymptotic_bound(ps, s.rho, t, topts));
        j["target"] = t.name;
      } else if (verb == "second-order") {
        const TargetState t = target_state(o.target);
        const SecondOrderBound b = second_order_bound(ps, s.rho, o.n, o.eps, t, topts);
        j["value"] = io::number(b.value);
        j["theta"] = io::number(b.theta);
        j["variance"] = io::number(b.variance);
        j["quantile"] = io::number(b.quantile);
        j["n"] = o.n;
        j["eps"] = io::number(o.eps);
        j["target"] = t.name;
        j["note"] = b.note;
      } else if (verb == "efficiency") {
        StateArgs xa{o.other.name, o.other.file, o.state.factors, o.state.copies};
        if (xa.name.empty() && xa.file.empty()) xa.name = "Hplus";
        const auto xi = load_state(xa, "xi");
        if (xi.rho.dim() != s.rho.dim()) throw DomainError("efficiency: rho and xi dimensions differ");
        j["n_mana"] = io::number(efficiency_bound_mana(ps, s.rho, xi.rho));
        j["n_thauma_max"] = io::number(efficiency_bound_thauma(ps, s.rho, xi.rho, mopts));
      } else if (verb == "interconversion") {
        const auto xi = load_state(StateArgs{o.other.name, o.other.file, o.state.factors, o.state.copies}, "xi");
        if (xi.rho.dim() != s.rho.dim()) throw DomainError("interconversion: rho and xi dimensions differ");
        const InterconversionBound b = interconversion_bound(ps, s.rho, xi.rho, mopts);
        j["value"] = io::number(b.upper);
        j["label"] = b.label();
        j["below_one"] = b.below_one;
        j["lower"] = io::number(b.lower);
        j["theta_min_rho"] = io::number(b.theta_min_rho);
        j["theta_max_rho"] = io::number(b.theta_max_rho);
        j["theta_min_xi"] = io::number(b.theta_min_xi);
        j["theta_max_xi"] = io::number(b.theta_max_xi);
      } else if (verb == "stab-fidelity") {
        const double f = stabilizer_fidelity(ps, pure_of(s));
        j["value"] = io::number(f);
        j["neg_log2"] = io::number(-std::log2(f));
      }
    }
    if (!wrote_text) buf << j.dump(2) << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (o.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(o.out);
    if (!f) {
      err << "error: cannot write '" << o.out << "'\n";
      return 1;
    }
    f << buf.str();
  }
  return 0;
}

}  // namespace thaumakit::cli
