#include "jacobi/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <variant>

#include "jacobi/diagnostics.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/io.hpp"
#include "jacobi/parallel.hpp"
#include "jacobi/recurrence.hpp"
#include "jacobi/sequences.hpp"
#include "jacobi/spectra.hpp"
#include "jacobi/transforms.hpp"

namespace jacobi::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

// A cell is empty (monostate), a number, an integer or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

long long as_int(std::size_t n) { return static_cast<long long>(n); }

json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return nullptr;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

void write_table(const Table& t, const fs::path& dir, const std::string& format) {
  if (format == "json") {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = cell_json(row[i]);
      rows.push_back(std::move(obj));
    }
    auto f = open_output(dir / (t.name + ".json"));
    f << rows.dump(2) << '\n';
    return;
  }
  auto f = open_output(dir / (t.name + ".csv"));
  io::CsvWriter w(f, t.header);
  for (const auto& row : t.rows) {
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c))
        w.cell(*d);
      else if (const auto* i = std::get_if<long long>(&c))
        w.cell(*i);
      else if (const auto* s = std::get_if<std::string>(&c))
        w.cell(std::string_view(*s));
      else
        w.empty();
    }
    w.end_row();
  }
}

fs::path prepare_dir(const std::string& out) {
  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  fs::create_directories(dir);
  return dir;
}

void write_config(const RunConfig& cfg, const fs::path& dir) {
  auto f = open_output(dir / "run_config.json");
  f << serialize(cfg) << '\n';
}

void report_warnings(const std::string& seq_text, std::ostream& err) {
  for (const auto& w : family_warnings(parse_family(seq_text))) err << "warning: " << w << '\n';
}

WeightSequence make_alpha(const std::string& text, const SequencePair& seq) {
  if (text == "a") return WeightSequence::equal_to_a(seq);
  if (text == "one") return WeightSequence::ones();
  if (text.rfind("table:", 0) == 0) return WeightSequence::from_table(load_weight_table(text.substr(6)));
  if (text.rfind("iterlog:", 0) == 0) {
    // iterlog:2, iterlog:K=2 or iterlog:K=2,N=40 (N is the cutoff below which alpha_n = 1)
    std::string rest = text.substr(8);
    double K = -1.0;
    std::optional<std::size_t> cutoff;
    if (io::parse_number(rest, K)) {
      rest.clear();
    } else {
      auto spec = parse_family("iterlog:" + rest);
      for (const auto& p : spec.params)
        if (p.key != "K" && p.key != "N") throw SpecError("--alpha iterlog: unknown parameter '" + p.key + "'", 8);
      auto k = spec.number("K");
      if (!k) throw SpecError("--alpha iterlog needs K", 8);
      K = *k;
      if (auto n = spec.number("N")) {
        if (*n < 0.0 || *n != std::floor(*n)) throw DomainError("--alpha iterlog: N must be a non-negative integer");
        cutoff = static_cast<std::size_t>(*n);
      }
    }
    if (K < 0.0 || K != std::floor(K) || K > 64.0) throw DomainError("--alpha iterlog: K must be a small non-negative integer");
    return WeightSequence::iterlog(seq, static_cast<int>(K), cutoff);
  }
  throw SpecError("--alpha must be a, one, iterlog:K or table:<path>, got '" + text + "'", 0);
}

std::optional<EigvecInit> make_init_choice(const std::string& text) {
  if (text == "p") return std::nullopt;
  auto comma = text.find(',');
  double u0 = 0.0;
  double u1 = 0.0;
  if (comma == std::string::npos || !io::parse_number(std::string_view(text).substr(0, comma), u0) ||
      !io::parse_number(std::string_view(text).substr(comma + 1), u1))
    throw SpecError("--init must be 'p' or 'u0,u1', got '" + text + "'", 0);
  return make_init(u0, u1);
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return {};
}

// analyze

struct AnalyzeResult {
  Table trace;
  Table diagnostics;
  std::vector<Cell> summary;
};

AnalyzeResult analyze_one(const SequencePair& seq, const WeightSequence& alpha, std::optional<EigvecInit> init_choice,
                          double lambda, std::size_t N, std::size_t k) {
  auto init = init_choice ? *init_choice : polynomial_init(seq, lambda);
  AnalyzeResult r;
  auto states = propagate(seq, lambda, init, N);
  auto values = eigvec_values(states);
  r.trace.name = "trace_" + std::to_string(k);
  r.trace.header = {"n", "sign_u", "log_abs_u", "u"};
  for (std::size_t n = 0; n <= N; ++n) {
    const auto& v = values[n];
    Cell u;
    if (v.is_zero())
      u = 0.0;
    else if (std::fabs(v.log_abs) < 700.0)
      u = v.value();
    r.trace.rows.push_back({as_int(n), static_cast<long long>(v.sign), v.is_zero() ? Cell{} : Cell{v.log_abs}, u});
  }

  auto trace = s_sequence(seq, alpha, lambda, init, N);
  r.diagnostics.name = "diagnostics_" + std::to_string(k);
  r.diagnostics.header = {"n",    "S_over_Shat", "S_normalized",    "log_Shat", "F",
                          "sumFminus", "sum_inv_a_alpha", "wmin", "wmax"};
  for (const auto& row : trace.rows)
    r.diagnostics.rows.push_back({as_int(row.n), row.s_over_shat, row.normalized(), row.log_shat,
                                  optional_cell(row.f), row.sum_f_minus, row.sum_inv_a_alpha, row.w_min, row.w_max});

  std::size_t lo = std::max<std::size_t>(1, N / 2);
  auto est = liminf_estimate(trace, lo, N);
  auto l2 = l2_partial_sums(values, N);
  r.summary = {as_int(k),
               lambda,
               as_int(lo),
               as_int(N),
               est.min_normalized,
               static_cast<long long>(est.min_s.sign),
               est.min_s.is_zero() ? Cell{} : Cell{est.min_s.log_abs},
               est.sum_f_minus,
               as_int(est.excluded),
               l2.back()};
  return r;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto seq = make_sequence(cfg.seq);
  report_warnings(cfg.seq, err);
  auto alpha = make_alpha(cfg.alpha, seq);
  auto init = make_init_choice(cfg.init);
  if (cfg.n < 2) throw PreconditionError("--n must be at least 2");
  std::vector<AnalyzeResult> results(cfg.lambdas.size());
  parallel_for(cfg.lambdas.size(), [&](std::size_t k) {
    results[k] = analyze_one(seq, alpha, init, cfg.lambdas[k], cfg.n, k);
  });

  auto dir = prepare_dir(cfg.out);
  Table summary{"summary",
                {"k", "lambda", "tail_lo", "tail_hi", "min_S_normalized", "min_S_sign", "min_S_log_abs",
                 "tail_sumFminus", "tail_F_excluded", "log_l2_sum"},
                {}};
  for (auto& r : results) {
    write_table(r.trace, dir, cfg.format);
    write_table(r.diagnostics, dir, cfg.format);
    summary.rows.push_back(std::move(r.summary));
  }
  write_table(summary, dir, cfg.format);
  write_config(cfg, dir);
  out << "analyze: " << results.size() << " lambda value(s), N = " << cfg.n << ", written to " << dir.string()
      << '\n';
  return 0;
}

// check

json evidence_json(const Evidence& e) {
  json j = json::object();
  j["checkpoints"] = json::array();
  for (const auto& c : e.checkpoints) j["checkpoints"].push_back({{"n", c.n}, {"value", cell_json(c.value)}});
  j["slopes"] = json::object();
  for (const auto& [name, v] : e.slopes) j["slopes"][name] = cell_json(v);
  j["windows"] = json::array();
  for (const auto& w : e.windows)
    j["windows"].push_back({{"label", w.label}, {"lo", w.lo}, {"hi", w.hi}, {"value", cell_json(w.value)}});
  j["notes"] = e.notes;
  return j;
}

json report_json(const CheckReport& r) {
  json j = json::object();
  j["theorem"] = r.theorem;
  j["overall"] = to_string(r.overall());
  j["conditions"] = json::array();
  for (const auto& c : r.conditions)
    j["conditions"].push_back({{"condition", c.condition},
                               {"description", c.description},
                               {"verdict", to_string(c.verdict)},
                               {"evidence", evidence_json(c.evidence)}});
  j["notes"] = r.notes;
  return j;
}

BirthDeathRates rates_from(const RunConfig& cfg) {
  if (cfg.rates.empty()) throw SpecError("birth-death commands need --bd <rates> or --rates <file>", 0);
  if (cfg.rates.rfind("file:", 0) == 0) return load_rates_csv(cfg.rates.substr(5));
  return parse_rates(cfg.rates);
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  json j;
  json extras = json::object();
  if (cfg.kind == "51") {
    auto rates = rates_from(cfg);
    auto r = bd_check_theorem_51(rates, cfg.n);
    j = report_json(r.report);
    extras["rates"] = rates.description();
    extras["route"] = r.route;
    extras["conclusion"] = r.conclusion ? json(*r.conclusion) : json(nullptr);
  } else {
    if (cfg.seq.empty()) throw SpecError("check --theorem " + cfg.kind + " needs --seq", 0);
    auto seq = make_sequence(cfg.seq);
    report_warnings(cfg.seq, err);
    extras["sequence"] = render(parse_family(cfg.seq));
    if (cfg.kind == "A") {
      auto alpha = make_alpha(cfg.alpha, seq);
      extras["alpha"] = alpha.description();
      j = report_json(check_theorem_A(seq, alpha, cfg.n));
    } else if (cfg.kind == "B") {
      j = report_json(check_corollary_B(seq, cfg.n));
    } else if (cfg.kind == "C") {
      auto r = check_corollary_C(seq, cfg.n);
      j = report_json(r.report);
      extras["M"] = r.m_estimate ? json(*r.m_estimate) : json(nullptr);
      extras["M_dispersion"] = cell_json(r.m_dispersion);
      extras["ratio_at_N"] = r.ratio.back() ? cell_json(*r.ratio.back()) : json(nullptr);
      extras["ratio_tail"] = r.ratio_tail ? cell_json(*r.ratio_tail) : json(nullptr);
      extras["ratio_undefined"] = r.ratio_undefined;
    } else if (cfg.kind == "42") {
      j = report_json(check_theorem_42(seq, cfg.n));
    } else {
      extras["K"] = cfg.K;
      j = report_json(check_theorem_43(seq, cfg.K, cfg.n));
    }
  }
  j["n"] = cfg.n;
  j["extras"] = std::move(extras);
  std::string text = j.dump(2);
  out << text << '\n';
  if (!cfg.out.empty()) {
    auto dir = prepare_dir(cfg.out);
    auto f = open_output(dir / "check.json");
    f << text << '\n';
    write_config(cfg, dir);
  }
  return 0;
}

// spectrum

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto seq = make_sequence(cfg.seq);
  report_warnings(cfg.seq, err);
  auto t = truncate(seq, cfg.n);
  double tol = cfg.tol ? *cfg.tol : default_tolerance(t);
  auto spec = eigenvalues(t, tol, cfg.weights);
  auto g = gershgorin_bounds(t);

  auto dir = prepare_dir(cfg.out);
  Table eig{"spectrum", {"k", "eigenvalue"}, {}};
  if (cfg.weights) eig.header.push_back("weight");
  for (std::size_t k = 0; k < spec.order; ++k) {
    std::vector<Cell> row{as_int(k + 1), spec.eigenvalues[k]};
    if (cfg.weights) row.push_back(spec.weights[k]);
    eig.rows.push_back(std::move(row));
  }
  write_table(eig, dir, cfg.format);
  if (cfg.window) {
    auto d = density_report(t, cfg.window->first, cfg.window->second, cfg.bin);
    Table dens{"density", {"bin_lo", "bin_hi", "count"}, {}};
    for (const auto& b : d.bins) dens.rows.push_back({b.lo, b.hi, as_int(b.count)});
    write_table(dens, dir, cfg.format);
  }
  write_config(cfg, dir);
  out << "spectrum: order " << spec.order << ", gershgorin [" << io::format_number(g.lo) << ", "
      << io::format_number(g.hi) << "], tolerance " << io::format_number(tol) << ", written to " << dir.string()
      << '\n';
  return 0;
}

// transform

int cmd_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Table t;
  t.name = "transform_" + cfg.kind;
  if (cfg.kind == "bd") {
    auto rates = rates_from(cfg);
    auto conv = bd_to_jacobi(rates);
    auto log_pi = conv.pi.log_pi_table(cfg.n == 0 ? 0 : cfg.n - 1);
    t.header = {"n", "abar", "bbar", "log_pi"};
    for (std::size_t n = 0; n < cfg.n; ++n) t.rows.push_back({as_int(n), conv.seq.a(n), conv.seq.b(n), log_pi[n]});
    err << "note: " << bd_restriction_route(rates).explanation << '\n';
  } else {
    if (cfg.seq.empty()) throw SpecError("transform " + cfg.kind + " needs --seq", 0);
    auto seq = make_sequence(cfg.seq);
    report_warnings(cfg.seq, err);
    std::optional<SequencePair> derived;
    if (cfg.kind == "flip") {
      derived = flip(seq);
      t.header = {"n", "a", "b"};
    } else if (cfg.kind == "even") {
      derived = square_even(seq);
      t.header = {"n", "a_e", "b_e"};
    } else {
      derived = square_odd(seq);
      t.header = {"n", "a_o", "b_o"};
    }
    for (std::size_t n = 0; n < cfg.n; ++n) t.rows.push_back({as_int(n), derived->a(n), derived->b(n)});
  }
  auto dir = prepare_dir(cfg.out);
  write_table(t, dir, cfg.format);
  write_config(cfg, dir);
  out << "transform " << cfg.kind << ": " << cfg.n << " rows written to " << dir.string() << '\n';
  return 0;
}

std::pair<double, double> parse_window(const std::string& text) {
  auto comma = text.find(',');
  double lo = 0.0;
  double hi = 0.0;
  if (comma == std::string::npos || !io::parse_number(std::string_view(text).substr(0, comma), lo) ||
      !io::parse_number(std::string_view(text).substr(comma + 1), hi))
    throw CLI::ValidationError("--window", "expected lo,hi");
  return {lo, hi};
}

}  // namespace

std::string serialize(const RunConfig& cfg) {
  json j = json::object();
  j["tool"] = "jacobi-spectra";
  j["version"] = kVersion;
  j["command"] = cfg.command;
  if (!cfg.kind.empty()) j["kind"] = cfg.kind;
  j["seq"] = cfg.seq;
  j["rates"] = cfg.rates;
  j["lambdas"] = cfg.lambdas;
  j["n"] = cfg.n;
  j["alpha"] = cfg.alpha;
  j["init"] = cfg.init;
  j["K"] = cfg.K;
  j["window"] = cfg.window ? json::array({cfg.window->first, cfg.window->second}) : json(nullptr);
  j["bin"] = cfg.bin;
  j["weights"] = cfg.weights;
  j["tol"] = cfg.tol ? json(*cfg.tol) : json(nullptr);
  j["format"] = cfg.format;
  j["out"] = cfg.out;
  return j.dump(2);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral diagnostics for Jacobi matrices", "jacobi-spectra"};
  app.set_version_flag("--version", std::string("jacobi-spectra ") + kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string window_text;
  std::string rates_file;
  std::string bd_text;
  std::size_t n_analyze = 1000;
  std::size_t n_check = 10000;
  std::size_t n_transform = 10;

  auto* analyze = app.add_subcommand("analyze", "eigenvector traces and S_n diagnostics");
  analyze->add_option("--seq", cfg.seq, "sequence, e.g. pow:alpha=0.5")->required();
  analyze->add_option("--lambda", cfg.lambdas, "spectral parameters, comma separated")->required()->delimiter(',');
  analyze->add_option("--n", n_analyze, "last index N")->capture_default_str();
  analyze->add_option("--alpha", cfg.alpha, "weight: a | one | iterlog:K | table:<path>")->default_val("a");
  analyze->add_option("--init", cfg.init, "initial pair: p (polynomials) or u0,u1")->default_val("p");

  auto* check = app.add_subcommand("check", "hypothesis checker verdicts as JSON");
  check->add_option("--theorem", cfg.kind, "A | B | C | 42 | 43 | 51")
      ->required()
      ->check(CLI::IsMember({"A", "B", "C", "42", "43", "51"}));
  check->add_option("--seq", cfg.seq, "sequence");
  check->add_option("--alpha", cfg.alpha, "weight for theorem A")->default_val("a");
  check->add_option("--K", cfg.K, "iterated-log order for theorem 43")->default_val(1)->check(CLI::NonNegativeNumber);
  check->add_option("--n", n_check, "last index N (at least 100)")->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "truncation eigenvalues and density");
  spectrum->add_option("--seq", cfg.seq, "sequence")->required();
  spectrum->add_option("--size", cfg.n, "truncation order")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--window", window_text, "density window lo,hi");
  spectrum->add_option("--bin", cfg.bin, "density bin width")->default_val(0.5)->check(CLI::PositiveNumber);
  spectrum->add_flag("--weights", cfg.weights, "also compute Gauss weights");
  spectrum->add_option("--tol", cfg.tol, "bisection tolerance")->check(CLI::PositiveNumber);

  auto* transform = app.add_subcommand("transform", "derived coefficient tables");
  transform->add_option("kind", cfg.kind, "flip | even | odd | bd")
      ->required()
      ->check(CLI::IsMember({"flip", "even", "odd", "bd"}));
  transform->add_option("--seq", cfg.seq, "sequence");
  transform->add_option("--n", n_transform, "number of rows")->capture_default_str();

  for (auto* sub : {analyze, check, spectrum, transform}) {
    sub->add_option("--format", cfg.format, "csv | json")->default_val("csv")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output directory");
  }
  for (auto* sub : {check, transform}) {
    sub->add_option("--bd", bd_text, "birth-death rates, e.g. lam=linear,mu=linear");
    sub->add_option("--rates", rates_file, "birth-death rates CSV (n, lambda, mu)");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!window_text.empty()) cfg.window = parse_window(window_text);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (!bd_text.empty() && !rates_file.empty()) {
    err << "error: --bd and --rates are mutually exclusive\n";
    return 2;
  }
  if (!bd_text.empty()) cfg.rates = bd_text;
  if (!rates_file.empty()) cfg.rates = "file:" + rates_file;

  try {
    if (analyze->parsed()) {
      cfg.command = "analyze";
      cfg.n = n_analyze;
      return cmd_analyze(cfg, out, err);
    }
    if (check->parsed()) {
      cfg.command = "check";
      cfg.n = n_check;
      return cmd_check(cfg, out, err);
    }
    if (spectrum->parsed()) {
      cfg.command = "spectrum";
      return cmd_spectrum(cfg, out, err);
    }
    cfg.command = "transform";
    cfg.n = n_transform;
    return cmd_transform(cfg, out, err);
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace jacobi::cli
