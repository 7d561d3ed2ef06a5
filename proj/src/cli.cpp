#include "cltscope/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <variant>

#include "cltscope/binomial.hpp"
#include "cltscope/cornish_fisher.hpp"
#include "cltscope/distances.hpp"
#include "cltscope/distribution.hpp"
#include "cltscope/edgeworth.hpp"
#include "cltscope/errors.hpp"
#include "cltscope/grid_function.hpp"
#include "cltscope/income.hpp"
#include "cltscope/lattice.hpp"
#include "cltscope/roulette.hpp"
#include "cltscope/sample_size.hpp"
#include "cltscope/simulation.hpp"
#include "cltscope/special_functions.hpp"
#include "cltscope/version.hpp"

namespace cltscope {

namespace {

using Cell = std::variant<double, long long, std::string>;

std::string format_double(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
  return buf;
}

std::string format_cell(const Cell& cell, int precision) {
  if (const auto* d = std::get_if<double>(&cell)) {
    return format_double(*d, precision);
  }
  if (const auto* i = std::get_if<long long>(&cell)) {
    return std::to_string(*i);
  }
  return std::get<std::string>(cell);
}

// One emitted artifact: provenance header + optional key/value notes +
// a rectangular table.
struct Table {
  std::string subcommand;
  std::string args;  // the full invocation, verbatim
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void note(const std::string& key, const std::string& value) {
    notes.emplace_back(key, value);
  }
  void note(const std::string& key, double value, int precision) {
    notes.emplace_back(key, format_double(value, precision));
  }
};

void emit_csv(const Table& t, const OutputSpec& spec, std::ostream& out) {
  out << "# cltscope " << kVersion << "\n";
  out << "# subcommand: " << t.subcommand << "\n";
  out << "# args: " << t.args << "\n";
  if (t.seed) out << "# seed: " << *t.seed << "\n";
  for (const auto& [k, v] : t.notes) out << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out << (i ? "," : "") << t.columns[i];
  }
  if (!t.columns.empty()) out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_cell(row[i], spec.precision);
    }
    out << "\n";
  }
}

nlohmann::json cell_to_json(const Cell& cell, int precision) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (std::isnan(*d)) return nullptr;
    // round to the requested precision so JSON and CSV agree
    return std::stod(format_double(*d, precision));
  }
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  return std::get<std::string>(cell);
}

void emit_json(const Table& t, const OutputSpec& spec, std::ostream& out) {
  nlohmann::json j;
  j["provenance"] = {{"tool", "cltscope"},
                     {"version", kVersion},
                     {"subcommand", t.subcommand},
                     {"args", t.args}};
  if (t.seed) j["provenance"]["seed"] = *t.seed;
  if (!t.notes.empty()) {
    nlohmann::json notes = nlohmann::json::object();
    for (const auto& [k, v] : t.notes) notes[k] = v;
    j["notes"] = notes;
  }
  j["columns"] = t.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& cell : row) jr.push_back(cell_to_json(cell, spec.precision));
    rows.push_back(jr);
  }
  j["rows"] = rows;
  out << j.dump(2) << "\n";
}

void emit(const Table& t, const OutputSpec& spec) {
  const auto write = [&](std::ostream& out) {
    if (spec.format == OutputSpec::Format::kCsv) {
      emit_csv(t, spec, out);
    } else {
      emit_json(t, spec, out);
    }
  };
  if (spec.path) {
    std::ofstream out(*spec.path);
    if (!out) throw Error("cannot open output file '" + *spec.path + "'");
    write(out);
  } else {
    write(std::cout);
  }
}

// ---------------------------------------------------------------------------
// Shared option groups

struct DistOptions {
  std::string csv_path;
  bool csv_header = false;
  std::vector<double> pmf_support;
  std::vector<double> pmf_probs;
  std::vector<double> two_point;  // v1, v2, p

  void attach(CLI::App* sub) {
    sub->add_option("--csv", csv_path,
                    "population CSV (single numeric column; caller-defined units)");
    sub->add_flag("--header", csv_header, "CSV has one header line to skip");
    sub->add_option("--support", pmf_support,
                    "PMF support points (comma separated, increasing)")
        ->delimiter(',');
    sub->add_option("--probs", pmf_probs, "PMF probabilities (comma separated)")
        ->delimiter(',');
    sub->add_option("--two-point", two_point,
                    "two-point spec: lose_value,win_value,win_prob")
        ->delimiter(',')
        ->expected(3);
  }

  bool any() const {
    return !csv_path.empty() || !pmf_support.empty() || !two_point.empty();
  }

  DistributionSpec build() const {
    if (!csv_path.empty()) {
      return read_population_csv(csv_path, csv_header);
    }
    if (!pmf_support.empty()) {
      FinitePmf pmf{pmf_support, pmf_probs};
      validate(DistributionSpec{pmf});
      return pmf;
    }
    if (two_point.size() == 3) {
      TwoPoint tp{two_point[0], two_point[1], two_point[2]};
      validate(DistributionSpec{tp});
      return tp;
    }
    throw InvalidInputError(
        "no distribution given: use --csv, --support/--probs or --two-point");
  }
};

struct MomentOptions {
  double lambda = 0.0;
  bool lambda_set = false;
  double eta = 0.0;
  bool eta_set = false;
  double rho = 0.0;
  bool rho_set = false;
  double mu = 0.0;
  double sigma = 1.0;
  DistOptions dist;

  void attach(CLI::App* sub) {
    dist.attach(sub);
    sub->add_option("--lambda", lambda, "skewness of the summands")
        ->each([this](const std::string&) { lambda_set = true; });
    sub->add_option("--eta", eta, "excess kurtosis of the summands")
        ->each([this](const std::string&) { eta_set = true; });
    sub->add_option("--rho", rho, "absolute third standardized moment")
        ->each([this](const std::string&) { rho_set = true; });
    sub->add_option("--mu", mu, "mean (only needed for unstandardized output)");
    sub->add_option("--sigma", sigma, "standard deviation (must be positive)");
  }

  MomentSummary build() const {
    if (dist.any()) {
      MomentSummary ms = compute_moments(dist.build());
      // explicit flags override the computed values
      if (lambda_set) ms.skewness = lambda;
      if (eta_set) ms.excess_kurtosis = eta;
      if (rho_set) ms.abs_third_std_moment = rho;
      validate(ms);
      return ms;
    }
    MomentSummary ms;
    ms.mean = mu;
    ms.sd = sigma;
    ms.skewness = lambda;
    if (eta_set) ms.excess_kurtosis = eta;
    if (rho_set) ms.abs_third_std_moment = rho;
    validate(ms);
    return ms;
  }
};

struct PointOptions {
  std::vector<double> points;
  std::string grid_spec;  // "lo:hi:count"

  void attach(CLI::App* sub, const std::string& flag, const std::string& what) {
    sub->add_option(flag, points, what + " (comma separated)")->delimiter(',');
    sub->add_option(flag + "-grid", grid_spec,
                    "uniform " + what + " grid as lo:hi:count");
  }

  std::vector<double> build() const {
    std::vector<double> out = points;
    if (!grid_spec.empty()) {
      double lo = 0.0, hi = 0.0;
      int count = 0;
      if (std::sscanf(grid_spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 ||
          count < 2 || !(hi > lo)) {
        throw InvalidInputError("bad grid spec '" + grid_spec +
                                "' (want lo:hi:count with count >= 2)");
      }
      for (int i = 0; i < count; ++i) {
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
      }
    }
    if (out.empty()) {
      throw InvalidInputError("no evaluation points given");
    }
    return out;
  }
};

ApproxOrder parse_order(const std::string& text) {
  if (text == "o1" || text == "1") return ApproxOrder::kOrder1;
  if (text == "sqrt-n" || text == "sqrtn") return ApproxOrder::kOrderSqrtN;
  if (text == "n") return ApproxOrder::kOrderN;
  throw InvalidInputError("unknown order '" + text + "' (o1 | sqrt-n | n)");
}

std::string join_args(const std::vector<std::string>& args) {
  std::string joined;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) joined += ' ';
    joined += args[i];
  }
  return joined;
}

// ---------------------------------------------------------------------------
// Subcommand payloads. Each returns the table(s) it wants emitted.

struct CommonState {
  OutputSpec out;
  std::string args_verbatim;

  Table table(const std::string& subcommand) const {
    Table t;
    t.subcommand = subcommand;
    t.args = args_verbatim;
    return t;
  }
};

void run_moments(const CommonState& state, const DistOptions& dist_opts,
                 const std::vector<long long>& n_list, bool lattice,
                 double delta_s, double delta_ek) {
  const DistributionSpec dist = dist_opts.build();
  const MomentSummary ms = compute_moments(dist);
  Table t = state.table("moments");
  t.columns = {"summary", "mean", "sd", "skewness", "excess_kurtosis",
               "abs_third_std_moment"};
  const auto row_of = [](const std::string& label, const MomentSummary& m) {
    std::vector<Cell> row{label, m.mean, m.sd, m.skewness,
                          m.excess_kurtosis ? Cell{*m.excess_kurtosis}
                                            : Cell{std::nan("")},
                          m.abs_third_std_moment ? Cell{*m.abs_third_std_moment}
                                                 : Cell{std::nan("")}};
    return row;
  };
  t.rows.push_back(row_of("population", ms));
  for (long long n : n_list) {
    t.rows.push_back(row_of("mean_of_" + std::to_string(n), moments_of_mean(ms, n)));
  }
  if (lattice) {
    const LatticeSpec lat = minimal_lattice(dist);
    t.note("lattice_offset", lat.offset, state.out.precision);
    t.note("lattice_span", lat.span, state.out.precision);
    t.note("lattice_std_offset", lat.std_offset, state.out.precision);
    t.note("lattice_std_span", lat.std_span, state.out.precision);
  }
  if (delta_s > 0.0 && delta_ek > 0.0) {
    t.note("naive_sample_size",
           std::to_string(naive_sample_size(ms, delta_s, delta_ek)));
  }
  emit(t, state.out);
}

void run_edgeworth(const CommonState& state, const MomentOptions& mopts,
                   long long n, const PointOptions& zopts,
                   const std::string& scale, const std::string& order_text) {
  const MomentSummary ms = mopts.build();
  const std::vector<double> zs = zopts.build();
  const bool pdf_scale = scale == "pdf";
  if (!pdf_scale && scale != "cdf") {
    throw InvalidInputError("--scale must be cdf or pdf");
  }
  const bool all = order_text == "all";
  const bool want_n = all ? ms.excess_kurtosis.has_value()
                          : parse_order(order_text) == ApproxOrder::kOrderN;
  const bool want_sqrt =
      all || parse_order(order_text) != ApproxOrder::kOrder1 || want_n;

  Table t = state.table("edgeworth");
  t.note("scale", scale);
  t.columns = {"z", "order1"};
  if (want_sqrt) t.columns.push_back("order_sqrt_n");
  if (want_n) t.columns.push_back("order_n");
  t.columns.push_back("out_of_range");

  for (double z : zs) {
    ApproxQuery q;
    q.n = n;
    q.point = z;
    std::vector<Cell> row{z};
    bool flagged = false;
    const auto eval = [&](ApproxOrder order) -> double {
      q.order = order;
      if (pdf_scale) {
        const PdfApprox r = edgeworth_pdf(q, ms);
        flagged = flagged || r.negative;
        return r.value;
      }
      const CdfApprox r = edgeworth_cdf(q, ms);
      flagged = flagged || r.outside_unit_interval;
      return r.value;
    };
    row.emplace_back(eval(ApproxOrder::kOrder1));
    if (want_sqrt) row.emplace_back(eval(ApproxOrder::kOrderSqrtN));
    if (want_n) row.emplace_back(eval(ApproxOrder::kOrderN));
    row.emplace_back(static_cast<long long>(flagged));
    t.rows.push_back(std::move(row));
  }
  emit(t, state.out);
}

void run_cornish_fisher(const CommonState& state, const MomentOptions& mopts,
                        long long n, const PointOptions& popts,
                        const std::string& order_text) {
  const MomentSummary ms = mopts.build();
  std::vector<double> ps = popts.build();
  const bool all = order_text == "all";
  const bool want_n = all ? ms.excess_kurtosis.has_value()
                          : parse_order(order_text) == ApproxOrder::kOrderN;

  Table t = state.table("cornish-fisher");
  t.columns = {"p", "order1", "order_sqrt_n"};
  if (want_n) t.columns.push_back("order_n");
  ApproxQuery q;
  q.n = n;
  for (double p : ps) {
    q.point = p;
    std::vector<Cell> row{p};
    q.order = ApproxOrder::kOrder1;
    row.emplace_back(cf_quantile(q, ms));
    q.order = ApproxOrder::kOrderSqrtN;
    row.emplace_back(cf_quantile(q, ms));
    if (want_n) {
      q.order = ApproxOrder::kOrderN;
      row.emplace_back(cf_quantile(q, ms));
    }
    t.rows.push_back(std::move(row));
  }
  // Monotonicity report over the evaluated points (formal expansions can
  // fold back for small n).
  if (std::is_sorted(ps.begin(), ps.end()) && ps.size() > 1 &&
      std::adjacent_find(ps.begin(), ps.end()) == ps.end()) {
    const auto curve = cf_quantile_curve(
        n, ps, ms, want_n ? ApproxOrder::kOrderN : ApproxOrder::kOrderSqrtN);
    t.note("monotone", curve.monotone ? "true" : "false");
  }
  emit(t, state.out);
}

void run_lattice(const CommonState& state, const DistOptions& dist_opts,
                 long long n, const PointOptions& zopts, long terms,
                 bool zigzag_only) {
  ZigzagConfig cfg;
  cfg.terms = terms;
  Table t = state.table("lattice");
  if (zigzag_only) {
    t.columns = {"z", "j_fourier", "j_piecewise"};
    for (double z : zopts.build()) {
      t.rows.push_back({z, zigzag_fourier(z, cfg), zigzag_piecewise(z)});
    }
    emit(t, state.out);
    return;
  }
  const DistributionSpec dist = dist_opts.build();
  const MomentSummary ms = compute_moments(dist);
  const LatticeSpec lat = minimal_lattice(dist);
  t.note("std_offset", lat.std_offset, state.out.precision);
  t.note("std_span", lat.std_span, state.out.precision);
  t.columns = {"z", "order1", "skew", "skew_lattice", "out_of_range"};
  for (double z : zopts.build()) {
    ApproxQuery q;
    q.n = n;
    q.point = z;
    q.order = ApproxOrder::kOrderSqrtN;
    const CdfApprox full = lattice_cdf(q, ms, lat, cfg);
    t.rows.push_back({z, std_normal_cdf(z),
                      std_normal_cdf(z) + cdf_term_skew(n, z, ms.skewness),
                      full.value,
                      static_cast<long long>(full.outside_unit_interval)});
  }
  emit(t, state.out);
}

void run_sample_size(const CommonState& state, const MomentOptions& mopts,
                     const std::vector<double>& eps_list,
                     const std::vector<double>& quantiles,
                     const std::vector<double>& wlln,
                     const std::vector<long long>& be_n, double be_c,
                     bool be_extremal, double ndagger_zstar) {
  Table t = state.table("sample-size");
  if (wlln.size() == 3) {
    t.columns = {"quantity", "value"};
    t.rows.push_back(
        {std::string("clt_n"),
         Cell{wlln_clt_n(wlln[0], wlln[1], wlln[2])}});
    t.rows.push_back(
        {std::string("chebyshev_n"), Cell{wlln_chebyshev_n(wlln[0], wlln[1], wlln[2])}});
    emit(t, state.out);
    return;
  }
  if (!be_n.empty()) {
    MomentSummary ms = mopts.build();
    std::optional<double> c;
    if (be_c > 0.0) c = be_c;
    if (be_extremal) c = esseen_extremal_constant();
    t.columns = {"n", "bound", "c", "rho"};
    for (long long n : be_n) {
      const BerryEsseenBound b = berry_esseen_bound(ms, n, c);
      t.rows.push_back({n, b.bound, b.c, b.rho});
    }
    emit(t, state.out);
    return;
  }
  const MomentSummary ms = mopts.build();
  if (std::isfinite(ndagger_zstar) && ndagger_zstar < 0.0) {
    t.note("n_nonneg_pdf",
           std::to_string(min_n_nonneg_pdf(ms.skewness, ndagger_zstar)));
    t.note("z_star", ndagger_zstar, state.out.precision);
  }
  if (eps_list.empty() || quantiles.empty()) {
    if (!t.notes.empty()) {
      t.columns = {};
      emit(t, state.out);
      return;
    }
    throw InvalidInputError(
        "sample-size: need --eps and --z-quantiles (or --wlln / --berry-esseen-n "
        "/ --n-dagger-zstar)");
  }
  t.columns = {"epsilon"};
  for (double p : quantiles) {
    const std::string tag = format_double(p, 6);
    t.columns.push_back("n3_" + tag);
    t.columns.push_back("n34_" + tag);
  }
  for (double eps : eps_list) {
    std::vector<Cell> row{eps};
    for (double p : quantiles) {
      const double z = std_normal_quantile(p);
      row.emplace_back(n3_star(z, eps, ms.skewness));
      row.emplace_back(n34_star(z, eps, ms));
    }
    t.rows.push_back(std::move(row));
  }
  emit(t, state.out);
}

void run_distances(const CommonState& state, const std::string& f_path,
                   const std::string& g_path) {
  const GridFunction f = read_grid_function_csv(f_path);
  const GridFunction g = read_grid_function_csv(g_path);
  Table t = state.table("distances");
  t.columns = {"metric", "value"};
  if (f.kind() == GridFunction::Kind::kCdf) {
    t.rows.push_back({std::string("ks"), ks_distance(f, g)});
    t.rows.push_back({std::string("wkr"), wkr_distance(f, g)});
  } else {
    const BhattacharyyaResult bc = bhattacharyya(f, g);
    const KlResult kl_fg = kl_divergence(f, g);
    const KlResult kl_gf = kl_divergence(g, f);
    t.rows.push_back({std::string("hellinger"), hellinger(f, g)});
    t.rows.push_back({std::string("bhattacharyya_coefficient"), bc.coefficient});
    t.rows.push_back({std::string("bhattacharyya_distance"), bc.distance});
    t.rows.push_back({std::string("kl_f_g"), kl_fg.divergence});
    t.rows.push_back({std::string("kl_g_f"), kl_gf.divergence});
    t.rows.push_back({std::string("cross_entropy_f_g"), kl_fg.cross_entropy});
    t.rows.push_back({std::string("differential_entropy_f"),
                      kl_fg.differential_entropy});
    t.rows.push_back({std::string("js"), js_metric(f, g)});
  }
  emit(t, state.out);
}

void run_demoivre(const CommonState& state, long long n, double p, long long d_max) {
  Table t = state.table("demoivre-table");
  t.columns = {"d", "exact", "approx_no_cc", "approx_cc"};
  bool anchored = false;
  for (long long d = 0; d <= d_max; ++d) {
    CentralProbQuery q{n, p, d};
    const CentralProb exact = central_binomial_prob(q);
    anchored = anchored || exact.anchored_at_floor;
    t.rows.push_back({d, exact.value, de_moivre_central_approx(q, false),
                      de_moivre_central_approx(q, true)});
  }
  if (anchored) t.note("anchored_at_floor_np", "true");
  emit(t, state.out);
}

void run_roulette(const CommonState& state, const std::string& bet_name,
                  const std::vector<double>& custom, long long n_max,
                  double epsilon, long terms, long long facts_n,
                  const std::string& corrections) {
  BetSpec bet;
  if (bet_name == "red-or-black") {
    bet = red_or_black_bet();
  } else if (bet_name == "single-number") {
    bet = single_number_bet();
  } else if (bet_name == "custom") {
    if (custom.size() != 3) {
      throw InvalidInputError("custom bet needs --custom v1,v2,p");
    }
    bet = BetSpec{custom[0], custom[1], custom[2], "custom"};
  } else {
    throw InvalidInputError("unknown bet '" + bet_name +
                            "' (red-or-black | single-number | custom)");
  }
  Table t = state.table("roulette");
  t.note("bet", bet.name);
  if (facts_n > 0) {
    const SinglePlayFacts facts = single_play_facts(bet, facts_n);
    t.columns = {"quantity", "value"};
    t.rows.push_back({std::string("n"), facts_n});
    t.rows.push_back(
        {std::string("expected_net_gain_per_play"), facts.expected_net_gain_per_play});
    t.rows.push_back({std::string("expected_house_take"), facts.expected_house_take});
    t.rows.push_back({std::string("most_likely_outcome"), facts.most_likely_outcome});
    t.rows.push_back(
        {std::string("most_likely_outcome_prob"), facts.most_likely_outcome_prob});
    t.rows.push_back({std::string("prob_net_plus_one"), facts.prob_net_plus_one});
    emit(t, state.out);
    return;
  }
  ZigzagConfig cfg;
  cfg.terms = terms;
  t.note("epsilon", epsilon, state.out.precision);
  const bool with_skew = corrections != "none";
  const bool with_lattice = corrections == "all";
  if (corrections != "none" && corrections != "skew" && corrections != "all") {
    throw InvalidInputError("--corrections must be none | skew | all");
  }
  t.columns = {"n", "exact", "o1"};
  if (with_skew) t.columns.push_back("skew");
  if (with_lattice) t.columns.push_back("skew_lattice");
  for (const RouletteResult& row : roulette_sweep(bet, n_max, epsilon, cfg)) {
    std::vector<Cell> cells{row.n, row.theta_exact, row.theta_o1};
    if (with_skew) cells.emplace_back(row.theta_skew);
    if (with_lattice) cells.emplace_back(row.theta_skew_lattice);
    t.rows.push_back(std::move(cells));
  }
  emit(t, state.out);
}

void run_simulate(const CommonState& state, const DistOptions& dist_opts,
                  const SimConfig& cfg, const std::vector<double>& quantiles,
                  const std::vector<double>& tail_z,
                  const std::string& emit_sample_path) {
  const DistributionSpec dist = dist_opts.build();
  const std::vector<double> sample = simulate_standardized_means(dist, cfg);

  Table t = state.table("simulate");
  t.seed = cfg.seed;
  t.note("n", std::to_string(cfg.n));
  t.note("replicates", std::to_string(cfg.replicates));
  t.columns = {"stat", "arg", "value"};

  double mean = 0.0;
  for (double x : sample) mean += x;
  mean /= static_cast<double>(sample.size());
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : sample) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(sample.size());
  m3 /= static_cast<double>(sample.size());
  m4 /= static_cast<double>(sample.size());
  const double sd = std::sqrt(m2);
  t.rows.push_back({std::string("mean"), std::nan(""), mean});
  t.rows.push_back({std::string("sd"), std::nan(""), sd});
  t.rows.push_back({std::string("skewness"), std::nan(""), m3 / (m2 * sd)});
  t.rows.push_back(
      {std::string("excess_kurtosis"), std::nan(""), m4 / (m2 * m2) - 3.0});

  std::vector<double> sorted(sample);
  std::sort(sorted.begin(), sorted.end());
  for (double p : quantiles) {
    t.rows.push_back({std::string("quantile"), p, empirical_quantile(sorted, p)});
    t.rows.push_back(
        {std::string("quantile_band3se"), p, quantile_se_halfwidth(sorted, p, 3.0)});
  }
  for (double z : tail_z) {
    t.rows.push_back(
        {std::string("tail_fraction"), z, empirical_tail_fraction(sample, z)});
  }
  if (!emit_sample_path.empty()) {
    std::ofstream out(emit_sample_path);
    if (!out) throw Error("cannot open '" + emit_sample_path + "' for writing");
    out << "# cltscope " << kVersion << "\n# subcommand: simulate\n# args: "
        << state.args_verbatim << "\n# seed: " << cfg.seed << "\nz\n";
    char buf[64];
    for (double x : sample) {
      std::snprintf(buf, sizeof(buf), "%.17g\n", x);
      out << buf;
    }
  }
  emit(t, state.out);
}

void run_income(const CommonState& state, const DistOptions& dist_opts,
                bool surrogate, long long surrogate_size, IncomeOptions opts,
                bool with_sim, const SimConfig& sim_cfg,
                const std::string& out_dir) {
  DistributionSpec population =
      surrogate ? DistributionSpec{income_surrogate(
                      static_cast<std::size_t>(surrogate_size))}
                : dist_opts.build();
  if (with_sim) opts.sim = sim_cfg;
  const IncomeReport report = income_pipeline(population, opts);

  Table t = state.table("income");
  if (with_sim) t.seed = sim_cfg.seed;
  t.note("mean", report.moments.mean, state.out.precision);
  t.note("sd", report.moments.sd, state.out.precision);
  t.note("skewness", report.moments.skewness, state.out.precision);
  if (report.moments.excess_kurtosis) {
    t.note("excess_kurtosis", *report.moments.excess_kurtosis, state.out.precision);
  }
  t.note("used_skewness", report.used_skewness, state.out.precision);
  t.note("used_excess_kurtosis", report.used_ekurt, state.out.precision);
  t.note("n_nonneg_pdf", std::to_string(report.n_nonneg_pdf));
  t.note("z_star", report.z_star, state.out.precision);

  // Main table: the sample-size matrix.
  t.columns = {"epsilon"};
  for (double p : opts.quantile_list) {
    const std::string tag = format_double(p, 6);
    t.columns.push_back("n3_" + tag);
    t.columns.push_back("n34_" + tag);
  }
  for (double eps : opts.epsilon_list) {
    std::vector<Cell> row{eps};
    for (const SampleSizeCell& cell : report.table) {
      if (cell.epsilon == eps) {
        row.emplace_back(cell.n3);
        row.emplace_back(cell.n34);
      }
    }
    t.rows.push_back(std::move(row));
  }
  emit(t, state.out);

  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);

  const auto plot_table = [&](const std::string& name) {
    Table p = state.table("income");
    if (with_sim) p.seed = sim_cfg.seed;
    p.note("file", name);
    return p;
  };
  const auto write_file = [&](Table& p, const std::string& name) {
    OutputSpec spec = state.out;
    spec.format = OutputSpec::Format::kCsv;
    spec.path = out_dir + "/" + name;
    emit(p, spec);
  };

  {
    Table p = plot_table("skew_correction_curves.csv");
    p.columns = {"z"};
    for (long long n : opts.n_list) p.columns.push_back("a_n" + std::to_string(n));
    for (std::size_t i = 0; i < report.z_grid.size(); ++i) {
      std::vector<Cell> row{report.z_grid[i]};
      for (const auto& curve : report.skew_curves) row.emplace_back(curve[i]);
      p.rows.push_back(std::move(row));
    }
    write_file(p, "skew_correction_curves.csv");
  }
  {
    Table p = plot_table("abs_error_surface.csv");
    p.note("layout", "rows: n (first column), columns: z grid");
    p.columns = {"n"};
    for (double z : report.z_grid) p.columns.push_back("z_" + format_double(z, 6));
    for (std::size_t i = 0; i < report.surface_n.size(); ++i) {
      std::vector<Cell> row{report.surface_n[i]};
      for (double v : report.error_surface[i]) row.emplace_back(v);
      p.rows.push_back(std::move(row));
    }
    write_file(p, "abs_error_surface.csv");
  }
  if (!report.track.empty()) {
    Table p = plot_table("quantile_track.csv");
    p.note("p", opts.track_p, state.out.precision);
    p.columns = {"n", "cf_order_n", "empirical", "band3se"};
    for (const QuantileTrackRow& row : report.track) {
      p.rows.push_back({row.n, row.cf_quantile, row.empirical_quantile, row.band3se});
    }
    write_file(p, "quantile_track.csv");
  }
}

// Levenshtein distance for "did you mean" suggestions on bad subcommands.
std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"CLT accuracy toolkit: Edgeworth/Cornish-Fisher corrections, "
               "lattice CDF approximations, Berry-Esseen bounds, statistical "
               "distances, exact Binomial oracles and sample-size solvers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonState state;
  state.args_verbatim = join_args(args);

  std::string format_text = "csv";
  std::string output_path;
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output_path, "output file (default: stdout)");
    sub->add_option("--precision", state.out.precision,
                    "decimal digits for emitted numbers")
        ->check(CLI::Range(1, 17));
  };
  // Callbacks fire inside parse(), so the output spec must be resolved
  // before any work runs.
  const auto finalize_output = [&] {
    state.out.format = format_text == "json" ? OutputSpec::Format::kJson
                                             : OutputSpec::Format::kCsv;
    if (!output_path.empty()) state.out.path = output_path;
  };

  // --- moments ---------------------------------------------------------
  auto* sub_moments = app.add_subcommand(
      "moments", "population moments, moments of the mean, minimal lattice");
  DistOptions mo_dist;
  mo_dist.attach(sub_moments);
  std::vector<long long> mo_n;
  sub_moments->add_option("--n", mo_n, "also report the mean of n draws")
      ->delimiter(',');
  bool mo_lattice = false;
  sub_moments->add_flag("--lattice", mo_lattice, "report the minimal lattice");
  double mo_ds = 0.0, mo_dek = 0.0;
  sub_moments->add_option("--delta-s", mo_ds, "skewness target for naive sizing");
  sub_moments->add_option("--delta-ek", mo_dek,
                          "excess-kurtosis target for naive sizing");
  add_output(sub_moments);
  sub_moments->callback(
      [&] { finalize_output(); run_moments(state, mo_dist, mo_n, mo_lattice, mo_ds, mo_dek); });

  // --- edgeworth -------------------------------------------------------
  auto* sub_edge = app.add_subcommand(
      "edgeworth", "CDF/PDF approximations for the standardized mean");
  MomentOptions ed_m;
  ed_m.attach(sub_edge);
  long long ed_n = 1;
  sub_edge->add_option("--n", ed_n, "sample size")->required();
  PointOptions ed_z;
  ed_z.attach(sub_edge, "--z", "evaluation points");
  std::string ed_scale = "cdf";
  sub_edge->add_option("--scale", ed_scale, "cdf | pdf");
  std::string ed_order = "all";
  sub_edge->add_option("--order", ed_order, "o1 | sqrt-n | n | all");
  add_output(sub_edge);
  sub_edge->callback(
      [&] { finalize_output(); run_edgeworth(state, ed_m, ed_n, ed_z, ed_scale, ed_order); });

  // --- cornish-fisher ---------------------------------------------------
  auto* sub_cf = app.add_subcommand("cornish-fisher",
                                    "quantile approximations for the "
                                    "standardized mean");
  MomentOptions cf_m;
  cf_m.attach(sub_cf);
  long long cf_n = 1;
  sub_cf->add_option("--n", cf_n, "sample size")->required();
  PointOptions cf_p;
  cf_p.attach(sub_cf, "--p", "probabilities");
  std::string cf_order = "all";
  sub_cf->add_option("--order", cf_order, "o1 | sqrt-n | n | all");
  add_output(sub_cf);
  sub_cf->callback([&] { finalize_output(); run_cornish_fisher(state, cf_m, cf_n, cf_p, cf_order); });

  // --- lattice ----------------------------------------------------------
  auto* sub_lat = app.add_subcommand(
      "lattice", "lattice-corrected CDF approximation; zig-zag function");
  DistOptions lat_dist;
  lat_dist.attach(sub_lat);
  long long lat_n = 1;
  sub_lat->add_option("--n", lat_n, "sample size");
  PointOptions lat_z;
  lat_z.attach(sub_lat, "--z", "evaluation points");
  long lat_terms = 1000;
  sub_lat->add_option("--terms", lat_terms, "Fourier truncation for J");
  bool lat_zigzag = false;
  sub_lat->add_flag("--zigzag", lat_zigzag, "emit the J function only");
  add_output(sub_lat);
  sub_lat->callback(
      [&] { finalize_output(); run_lattice(state, lat_dist, lat_n, lat_z, lat_terms, lat_zigzag); });

  // --- sample-size ------------------------------------------------------
  auto* sub_size = app.add_subcommand(
      "sample-size",
      "n3*/n34* matrices, PDF-positivity threshold, Berry-Esseen, WLLN");
  MomentOptions sz_m;
  sz_m.attach(sub_size);
  std::vector<double> sz_eps, sz_q, sz_wlln;
  sub_size->add_option("--eps", sz_eps, "accuracy targets (comma separated)")
      ->delimiter(',');
  sub_size
      ->add_option("--z-quantiles", sz_q,
                   "probabilities p defining z = Phi^-1(p) (comma separated)")
      ->delimiter(',');
  sub_size
      ->add_option("--wlln", sz_wlln,
                   "WLLN mode: p,half_width,target_probability")
      ->delimiter(',')
      ->expected(3);
  std::vector<long long> sz_be_n;
  sub_size->add_option("--berry-esseen-n", sz_be_n, "Berry-Esseen mode: n values")
      ->delimiter(',');
  double sz_be_c = 0.0;
  sub_size->add_option("--c", sz_be_c, "override the Berry-Esseen constant");
  bool sz_be_ex = false;
  sub_size->add_flag("--esseen-extremal", sz_be_ex,
                     "use the extremal-family constant (3+sqrt(10))/(6*sqrt(2pi))");
  double sz_nd = std::nan("");
  sub_size->add_option("--n-dagger-zstar", sz_nd,
                       "also report the PDF-positivity threshold at this z* < 0");
  add_output(sub_size);
  sub_size->callback([&] {
    finalize_output();
    run_sample_size(state, sz_m, sz_eps, sz_q, sz_wlln, sz_be_n, sz_be_c,
                    sz_be_ex, sz_nd);
  });

  // --- distances --------------------------------------------------------
  auto* sub_dist = app.add_subcommand(
      "distances", "statistical distances between two tabulated functions");
  std::string di_f, di_g;
  sub_dist->add_option("--f", di_f, "first tabulation (CSV with # kind header)")
      ->required();
  sub_dist->add_option("--g", di_g, "second tabulation (same kind)")->required();
  add_output(sub_dist);
  sub_dist->callback([&] { finalize_output(); run_distances(state, di_f, di_g); });

  // --- demoivre-table ----------------------------------------------------
  auto* sub_dm = app.add_subcommand(
      "demoivre-table",
      "exact central Binomial probabilities vs the Normal approximation");
  long long dm_n = 100;
  double dm_p = 0.5;
  long long dm_dmax = 9;
  sub_dm->add_option("--n", dm_n, "number of trials")->required();
  sub_dm->add_option("--p", dm_p, "success probability")->required();
  sub_dm->add_option("--d-max", dm_dmax, "largest central deviation d");
  add_output(sub_dm);
  sub_dm->callback([&] { finalize_output(); run_demoivre(state, dm_n, dm_p, dm_dmax); });

  // --- roulette -----------------------------------------------------------
  auto* sub_rl = app.add_subcommand(
      "roulette", "come-out-ahead probabilities, exact and approximate");
  std::string rl_bet = "red-or-black";
  sub_rl->add_option("--bet", rl_bet, "red-or-black | single-number | custom");
  std::vector<double> rl_custom;
  sub_rl->add_option("--custom", rl_custom, "custom bet: v1,v2,p")
      ->delimiter(',')
      ->expected(3);
  long long rl_nmax = 50;
  sub_rl->add_option("--n-max", rl_nmax, "sweep n = 1..n_max");
  double rl_eps = 0.0;
  sub_rl->add_option("--epsilon", rl_eps, "net-gain threshold (>= 0)");
  long rl_terms = 1000;
  sub_rl->add_option("--terms", rl_terms, "Fourier truncation for J");
  long long rl_facts = 0;
  sub_rl->add_option("--facts", rl_facts,
                     "report single-play facts for this n instead of a sweep");
  std::string rl_corr = "all";
  sub_rl->add_option("--corrections", rl_corr,
                     "approximation columns: none | skew | all");
  add_output(sub_rl);
  sub_rl->callback([&] {
    finalize_output();
    run_roulette(state, rl_bet, rl_custom, rl_nmax, rl_eps, rl_terms, rl_facts,
                 rl_corr);
  });

  // --- simulate ------------------------------------------------------------
  auto* sub_sim = app.add_subcommand(
      "simulate", "Monte Carlo standardized means with a counter-based RNG");
  DistOptions sim_dist;
  sim_dist.attach(sub_sim);
  SimConfig sim_cfg;
  sub_sim->add_option("--n", sim_cfg.n, "per-mean sample size")->required();
  sub_sim->add_option("--replicates", sim_cfg.replicates, "number of means");
  sub_sim->add_option("--seed", sim_cfg.seed, "64-bit RNG seed");
  sub_sim->add_option("--chunks", sim_cfg.parallel_chunks,
                      "parallel chunks (capped by CLT_SCOPE_THREADS)");
  std::vector<double> sim_q, sim_tail;
  sub_sim->add_option("--quantiles", sim_q, "empirical quantiles to report")
      ->delimiter(',');
  sub_sim->add_option("--tail-z", sim_tail, "tail fractions P(Z > z) to report")
      ->delimiter(',');
  std::string sim_emit;
  sub_sim->add_option("--emit-sample", sim_emit,
                      "write the raw standardized means to this file");
  add_output(sub_sim);
  sub_sim->callback(
      [&] { finalize_output(); run_simulate(state, sim_dist, sim_cfg, sim_q, sim_tail, sim_emit); });

  // --- income ----------------------------------------------------------------
  auto* sub_inc = app.add_subcommand(
      "income", "finite-population case study: sizing tables and plot data");
  DistOptions inc_dist;
  inc_dist.attach(sub_inc);
  bool inc_surrogate = false;
  sub_inc->add_flag("--surrogate", inc_surrogate,
                    "use the built-in synthetic income population");
  long long inc_size = 842;
  sub_inc->add_option("--size", inc_size, "surrogate population size");
  IncomeOptions inc_opts;
  sub_inc->add_option("--eps", inc_opts.epsilon_list, "accuracy targets")
      ->delimiter(',');
  sub_inc->add_option("--quantiles", inc_opts.quantile_list,
                      "probabilities for the table columns")
      ->delimiter(',');
  sub_inc->add_option("--n", inc_opts.n_list, "sample sizes for curve overlays")
      ->delimiter(',');
  sub_inc->add_option("--z-star", inc_opts.z_star,
                      "left-tail guard for the PDF positivity threshold");
  double inc_lambda = std::nan(""), inc_eta = std::nan("");
  sub_inc->add_option("--inject-lambda", inc_lambda,
                      "override the population skewness");
  sub_inc->add_option("--inject-eta", inc_eta,
                      "override the population excess kurtosis");
  SimConfig inc_sim;
  long long inc_sim_reps = 0;
  sub_inc->add_option("--sim-replicates", inc_sim_reps,
                      "enable the Monte Carlo quantile track with this many means");
  sub_inc->add_option("--seed", inc_sim.seed, "RNG seed for the track");
  sub_inc->add_option("--chunks", inc_sim.parallel_chunks, "parallel chunks");
  sub_inc->add_option("--track-n", inc_opts.track_n_list,
                      "sample sizes for the quantile track")
      ->delimiter(',');
  sub_inc->add_option("--track-p", inc_opts.track_p, "tracked quantile");
  std::string inc_outdir;
  sub_inc->add_option("--out-dir", inc_outdir,
                      "directory for the per-figure CSV files");
  add_output(sub_inc);
  sub_inc->callback([&] {
    finalize_output();
    if (std::isfinite(inc_lambda)) inc_opts.inject_skewness = inc_lambda;
    if (std::isfinite(inc_eta)) inc_opts.inject_ekurt = inc_eta;
    inc_sim.replicates = inc_sim_reps > 0 ? inc_sim_reps : 1;
    run_income(state, inc_dist, inc_surrogate, inc_size, inc_opts,
               inc_sim_reps > 0, inc_sim, inc_outdir);
  });

  // Suggest the closest subcommand on a miss, before CLI11 sees it.
  if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
    bool known = false;
    for (const CLI::App* sub : app.get_subcommands({})) {
      if (sub->get_name() == args[0]) known = true;
    }
    if (!known) {
      std::string best;
      std::size_t best_d = static_cast<std::size_t>(-1);
      for (const CLI::App* sub : app.get_subcommands({})) {
        const std::size_t d = edit_distance(args[0], sub->get_name());
        if (d < best_d) {
          best_d = d;
          best = sub->get_name();
        }
      }
      std::cerr << "error: unknown subcommand '" << args[0] << "'";
      if (!best.empty()) std::cerr << "; did you mean '" << best << "'?";
      std::cerr << "\n";
      return 2;
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (CLI::App* sub : app.get_subcommands()) target = sub;
    std::cout << target->help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    std::cout << e.what() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  return 0;
}

}  // namespace cltscope
