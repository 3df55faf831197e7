// rflab command-line front end: every experiment in the library behind one
// binary with reproducible, machine-readable output (csv / json / table) and
// a run manifest on stderr (or a --manifest file) for exact replay.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rflab/rflab.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr std::int64_t default_truncation_prime = 10'000'000;

enum class out_format { csv, json_fmt, table };

struct global_options {
  out_format format = out_format::table;
  int precision = 6;
  std::string output_path;    // empty: stdout
  std::string manifest_path;  // empty: stderr
  std::int64_t limit_override = 0;  // 0: derive from the command
  unsigned threads = 0;             // 0: hardware concurrency
};

unsigned effective_threads(const global_options& g) {
  if (g.threads > 0) return g.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

std::string fmt_int(std::int64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%" PRId64, v);
  return buf;
}

// One output cell: preformatted text plus enough type information to emit
// valid JSON.
struct cell {
  std::string text;
  bool quoted = false;  // JSON string rather than number
  bool null = false;

  static cell num(double v, int precision) { return {fmt_fixed(v, precision), false, false}; }
  static cell integer(std::int64_t v) { return {fmt_int(v), false, false}; }
  static cell str(std::string s) { return {std::move(s), true, false}; }
  static cell none() { return {"", false, true}; }
};

struct result_table {
  std::vector<std::string> columns;
  std::vector<std::vector<cell>> rows;

  void add(std::vector<cell> row) { rows.push_back(std::move(row)); }
};

void emit_csv(const result_table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "");
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i].text << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

void emit_json(const result_table& t, std::ostream& os) {
  os << "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r == 0 ? "\n" : ",\n") << "  {";
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
      const cell& c = t.rows[r][i];
      os << (i == 0 ? "" : ", ") << '"' << t.columns[i] << "\": ";
      if (c.null)
        os << "null";
      else if (c.quoted)
        os << '"' << c.text << '"';
      else
        os << c.text;
    }
    os << "}";
  }
  os << "\n]\n";
}

void emit_table(const result_table& t, std::ostream& os) {
  std::vector<std::size_t> widths(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    widths[i] = t.columns[i].size();
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      widths[i] = std::max(widths[i], row[i].text.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "  " : "") << std::string(widths[i] - t.columns[i].size(), ' ')
       << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "  " : "") << std::string(widths[i] - row[i].text.size(), ' ')
         << row[i].text;
    os << "\n";
  }
}

void emit(const result_table& t, const global_options& g) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!g.output_path.empty()) {
    file.open(g.output_path);
    if (!file) throw std::runtime_error("cannot open output file " + g.output_path);
    os = &file;
  }
  switch (g.format) {
    case out_format::csv: emit_csv(t, *os); break;
    case out_format::json_fmt: emit_json(t, *os); break;
    case out_format::table: emit_table(t, *os); break;
  }
}

class manifest {
public:
  manifest(std::string command, const global_options& g)
      : g_(g), start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["version"] = rflab::version;
    doc_["format"] = g.format == out_format::csv
                         ? "csv"
                         : g.format == out_format::json_fmt ? "json" : "table";
    doc_["precision"] = g.precision;
    doc_["threads"] = effective_threads(g);
  }

  void param(const std::string& key, const json& value) { params_[key] = value; }
  void limit(std::int64_t v) { doc_["table_limit"] = v; }
  void truncation(const std::string& key, const json& v) { trunc_[key] = v; }

  ~manifest() {
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
    doc_["params"] = params_;
    if (!trunc_.empty()) doc_["truncation"] = trunc_;
    doc_["duration_s"] = elapsed;
    const std::string line = doc_.dump();
    if (g_.manifest_path.empty()) {
      std::cerr << line << "\n";
    } else {
      std::ofstream os(g_.manifest_path, std::ios::app);
      if (os) os << line << "\n";
    }
  }

private:
  global_options g_;
  json doc_;
  json params_ = json::object();
  json trunc_ = json::object();
  std::chrono::steady_clock::time_point start_;
};

// hard_min is what the command cannot run without; desired adds the default
// singular-series truncation. --limit may trim the sieve down to hard_min
// (lowering the truncation with it) or push it higher.
std::int64_t pick_limit(const global_options& g, std::int64_t hard_min,
                        std::int64_t desired = 0) {
  const std::int64_t lim = g.limit_override > 0
                               ? g.limit_override
                               : std::max(hard_min, desired);
  if (lim < hard_min)
    throw std::invalid_argument("--limit " + std::to_string(lim) +
                                " is below the required " +
                                std::to_string(hard_min));
  return lim;
}

// Truncation prime actually used for A / C(h): the default unless the sieve
// is smaller.
std::int64_t pick_truncation(const rflab::sieve_tables& tables) {
  return std::min<std::int64_t>(default_truncation_prime, tables.limit());
}

// ---------------------------------------------------------------------------
// wk-table

struct wk_args {
  std::int64_t h = 0;
  std::int64_t n_max = 0;
  std::int64_t step = 0;
  bool paper_defaults = false;
  std::string weight = "totient";
};

int run_wk_table(const wk_args& a, const global_options& g) {
  wk_args eff = a;
  if (eff.paper_defaults) {
    if (eff.n_max == 0) eff.n_max = 1'000'000;
    if (eff.step == 0) eff.step = 100'000;
    eff.weight = "reference";
  }
  if (eff.h < 1) throw std::invalid_argument("wk-table: --h must be positive");
  if (eff.step == 0) eff.step = eff.n_max;  // single row by default
  if (eff.n_max < 1 || eff.step < 1 || eff.step > eff.n_max)
    throw std::invalid_argument("wk-table: need 0 < step <= N-max");
  const auto conv = eff.weight == "reference"
                        ? rflab::psi_convention::reference_tables
                        : rflab::psi_convention::totient_mangoldt;

  manifest m("wk-table", g);
  m.param("h", eff.h);
  m.param("N_max", eff.n_max);
  m.param("step", eff.step);
  m.param("weight", eff.weight);

  const bool even_h = eff.h % 2 == 0;
  const auto tables = rflab::build_sieve(
      pick_limit(g, eff.n_max + eff.h,
                 even_h ? default_truncation_prime : std::int64_t{2}));
  m.limit(tables.limit());

  rflab::singular_value c_h;
  if (even_h) {
    c_h = rflab::singular_series(eff.h, pick_truncation(tables), tables);
    m.truncation("singular_prime", c_h.truncation_prime);
    m.truncation("singular_tail_bound", c_h.tail_bound);
  } else {
    c_h.h = eff.h;
    c_h.value = 0.0;
    std::cerr << "warning: C(h) = 0 for odd h; ratio column left empty\n";
  }

  std::vector<std::int64_t> n_list;
  for (std::int64_t n = eff.step; n <= eff.n_max; n += eff.step) n_list.push_back(n);
  const auto rows =
      rflab::ratio_table(eff.h, n_list, tables, c_h, conv, effective_threads(g));

  result_table out;
  out.columns = {"N", "Psi", "Psi_over_N", "Ratio"};
  for (const auto& r : rows) {
    out.add({cell::integer(r.n_limit), cell::num(r.psi, g.precision),
             cell::num(r.psi_over_n, g.precision),
             r.ratio ? cell::num(*r.ratio, g.precision) : cell::none()});
  }
  emit(out, g);
  return 0;
}

// ---------------------------------------------------------------------------
// singular

int run_singular(std::int64_t h, std::int64_t trunc, std::int64_t partial_q,
                 const global_options& g) {
  if (h == 0) throw std::invalid_argument("singular: --h must be nonzero");
  manifest m("singular", g);
  m.param("h", h);
  m.param("trunc", trunc);
  const std::int64_t ah = h < 0 ? -h : h;
  const auto tables = rflab::build_sieve(
      pick_limit(g, std::max({trunc, ah, partial_q, std::int64_t{3}})));
  m.limit(tables.limit());
  const auto c_h = rflab::singular_series(h, trunc, tables);
  const double a_value = rflab::prime_product_a(trunc, tables);
  m.truncation("singular_prime", c_h.truncation_prime);
  m.truncation("singular_tail_bound", c_h.tail_bound);

  result_table out;
  out.columns = {"h", "C_h", "A", "two_A", "truncation_prime", "tail_bound"};
  std::vector<cell> row{cell::integer(h),       cell::num(c_h.value, g.precision),
                        cell::num(a_value, g.precision),
                        cell::num(2.0 * a_value, g.precision),
                        cell::integer(c_h.truncation_prime),
                        cell::num(c_h.tail_bound, std::max(g.precision, 10))};
  if (partial_q > 0) {
    m.param("compare_partial", partial_q);
    out.columns.push_back("partial_Q");
    out.columns.push_back("partial_sum");
    row.push_back(cell::integer(partial_q));
    row.push_back(cell::num(rflab::singular_series_partial(h, partial_q, tables),
                            g.precision));
  }
  out.add(std::move(row));
  emit(out, g);
  return 0;
}

// ---------------------------------------------------------------------------
// goldbach

int run_goldbach(std::int64_t n, const global_options& g) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("goldbach: --n must be even and >= 4");
  manifest m("goldbach", g);
  m.param("n", n);
  const auto tables =
      rflab::build_sieve(pick_limit(g, n, default_truncation_prime));
  m.limit(tables.limit());
  const std::int64_t trunc = pick_truncation(tables);
  const double a_value = rflab::prime_product_a(trunc, tables);
  m.truncation("singular_prime", trunc);

  result_table out;
  out.columns = {"n", "ordered", "unordered", "weighted", "hl_estimate"};
  out.add({cell::integer(n), cell::integer(rflab::goldbach_count(n, tables)),
           cell::integer(rflab::goldbach_count_unordered(n, tables)),
           cell::num(rflab::goldbach_weighted(n, tables), g.precision),
           cell::num(rflab::hl_goldbach_estimate(n, tables, a_value), g.precision)});
  emit(out, g);
  return 0;
}

// ---------------------------------------------------------------------------
// sylvester-brun

int run_sylvester_brun(std::int64_t n, const global_options& g) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("sylvester-brun: --n must be even and >= 4");
  manifest m("sylvester-brun", g);
  m.param("n", n);
  const auto tables =
      rflab::build_sieve(pick_limit(g, n, default_truncation_prime));
  m.limit(tables.limit());
  const std::int64_t trunc = pick_truncation(tables);
  const double a_value = rflab::prime_product_a(trunc, tables);
  m.truncation("singular_prime", trunc);

  const double hl = rflab::hl_goldbach_estimate(n, tables, a_value);
  const double syl = rflab::sylvester_estimate(n, tables, a_value);
  const double brun = rflab::brun_estimate(n, tables, a_value);
  result_table out;
  out.columns = {"n",         "hl_estimate",       "sylvester",
                 "brun",      "sylvester_over_hl", "brun_over_hl"};
  out.add({cell::integer(n), cell::num(hl, g.precision), cell::num(syl, g.precision),
           cell::num(brun, g.precision), cell::num(syl / hl, g.precision),
           cell::num(brun / hl, g.precision)});
  emit(out, g);
  return 0;
}

// ---------------------------------------------------------------------------
// rota

struct rota_measure_args {
  std::string set = "all";
  std::int64_t k = 0;
  std::vector<double> s_values{2.0};
  std::int64_t m = 1'000'000;
  std::int64_t density_n = 0;
};

int run_rota_measure(const rota_measure_args& a, const global_options& g) {
  manifest mf("rota-measure", g);
  mf.param("set", a.set);
  mf.param("M", a.m);
  if (a.k > 0) mf.param("k", a.k);

  std::unique_ptr<rflab::sieve_tables> tables;
  if (a.set == "primes")
    tables = std::make_unique<rflab::sieve_tables>(rflab::build_sieve(std::max<std::int64_t>(a.m, 2)));
  auto pred = [&](std::int64_t n) -> bool {
    if (a.set == "all") return true;
    if (a.set == "multiples") return n % a.k == 0;
    if (a.set == "squares") {
      const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
      for (std::int64_t c = std::max<std::int64_t>(r - 1, 0); c <= r + 1; ++c)
        if (c * c == n) return true;
      return false;
    }
    return tables->is_prime(n);  // "primes"
  };
  if (a.set == "multiples" && a.k < 1)
    throw std::invalid_argument("rota measure: --k required with --set multiples");
  if (a.set != "all" && a.set != "multiples" && a.set != "squares" && a.set != "primes")
    throw std::invalid_argument("rota measure: unknown --set " + a.set);

  result_table out;
  out.columns = {"set", "s", "M", "P_s", "tail_bound"};
  if (a.density_n > 0) out.columns.push_back("density");
  for (double s : a.s_values) {
    const auto measure = rflab::make_zeta_measure(s, a.m);
    std::vector<cell> row{cell::str(a.set), cell::num(s, g.precision),
                          cell::integer(a.m),
                          cell::num(rflab::zeta_measure(pred, measure), g.precision),
                          cell::num(measure.tail_bound, std::max(g.precision, 10))};
    if (a.density_n > 0)
      row.push_back(cell::num(rflab::arithmetic_density(pred, a.density_n), g.precision));
    out.add(std::move(row));
  }
  emit(out, g);
  return 0;
}

int run_rota_kernel(std::int64_t r, std::int64_t n, double s, std::int64_t m,
                    const global_options& g) {
  manifest mf("rota-kernel", g);
  mf.param("n", n);
  mf.param("s", s);
  result_table out;
  if (r > 0) {
    mf.param("r", r);
    const auto ident = rflab::kernel_sum_identity_check(r, n, s);
    out.columns = {"r", "n", "s", "P_kernel", "identity_lhs", "identity_rhs"};
    out.add({cell::integer(r), cell::integer(n), cell::num(s, g.precision),
             cell::num(rflab::kernel_probability_finite(r, n, s), g.precision),
             cell::num(ident.lhs, g.precision), cell::num(ident.rhs, g.precision)});
  } else {
    mf.param("M", m);
    out.columns = {"n", "s", "M", "P_kernel"};
    out.add({cell::integer(n), cell::num(s, g.precision), cell::integer(m),
             cell::num(rflab::kernel_probability_profinite(n, s, m), g.precision)});
  }
  emit(out, g);
  return 0;
}

int run_rota_independence(std::int64_t p, std::int64_t q, double s,
                          std::int64_t m, const global_options& g) {
  manifest mf("rota-independence", g);
  mf.param("p", p);
  mf.param("q", q);
  mf.param("s", s);
  mf.param("M", m);
  const auto res = rflab::independence_check(p, q, s, m);
  result_table out;
  out.columns = {"p", "q", "s", "M", "joint", "product"};
  out.add({cell::integer(p), cell::integer(q), cell::num(s, g.precision),
           cell::integer(m), cell::num(res.joint, g.precision),
           cell::num(res.product, g.precision)});
  emit(out, g);
  return 0;
}

// ---------------------------------------------------------------------------
// glaisher / rfcoef / csum / sieve-dump

int run_glaisher(std::int64_t n, const global_options& g) {
  manifest m("glaisher", g);
  m.param("n", n);
  const auto res = rflab::glaisher_compare(n);
  result_table out;
  out.columns = {"n", "closed_form", "rounded", "enumerated"};
  out.add({cell::integer(res.n), cell::num(res.closed_form, g.precision),
           cell::integer(res.rounded), cell::integer(res.enumerated)});
  emit(out, g);
  return 0;
}

int run_rfcoef(std::int64_t q_max, std::int64_t n_limit, const global_options& g) {
  if (q_max < 1 || n_limit < 1)
    throw std::invalid_argument("rfcoef: need positive --q-max and --N");
  manifest m("rfcoef", g);
  m.param("q_max", q_max);
  m.param("N", n_limit);
  const auto tables = rflab::build_sieve(pick_limit(g, std::max(q_max, n_limit)));
  m.limit(tables.limit());
  auto weight = [&](std::int64_t n) { return rflab::weighted_tail(n, tables); };

  result_table out;
  out.columns = {"q", "coefficient", "reference", "abs_error"};
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double coef = rflab::rf_coefficient(weight, q, n_limit, tables);
    const double ref = static_cast<double>(tables.mu(q)) /
                       static_cast<double>(tables.phi(q));
    out.add({cell::integer(q), cell::num(coef, g.precision),
             cell::num(ref, g.precision),
             cell::num(std::abs(coef - ref), g.precision)});
  }
  emit(out, g);
  return 0;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) {
    const std::int64_t v = std::stoll(text);
    return {v, v};
  }
  const std::int64_t lo = std::stoll(text.substr(0, pos));
  const std::int64_t hi = std::stoll(text.substr(pos + 2));
  if (hi < lo) throw std::invalid_argument("range upper bound below lower bound");
  return {lo, hi};
}

int run_csum(std::int64_t q, const std::string& range, const global_options& g) {
  if (q < 1) throw std::invalid_argument("csum: --q must be positive");
  manifest m("csum", g);
  m.param("q", q);
  m.param("n", range);
  const auto [lo, hi] = parse_range(range);
  const auto tables = rflab::build_sieve(pick_limit(g, std::max<std::int64_t>(q, 2)));
  m.limit(tables.limit());
  result_table out;
  out.columns = {"n", "c_q_n"};
  for (std::int64_t n = lo; n <= hi; ++n)
    out.add({cell::integer(n), cell::integer(rflab::ramanujan_sum(q, n, tables))});
  emit(out, g);
  return 0;
}

int run_sieve_dump(std::int64_t limit, const std::string& out_path,
                   const std::string& in_path, const global_options& g) {
  manifest m("sieve-dump", g);
  result_table out;
  out.columns = {"limit", "primes"};
  if (!in_path.empty()) {
    m.param("input", in_path);
    const auto tables = rflab::sieve_tables::load_file(in_path);
    m.limit(tables.limit());
    out.add({cell::integer(tables.limit()),
             cell::integer(static_cast<std::int64_t>(tables.primes().size()))});
    emit(out, g);
    return 0;
  }
  if (limit < 2) throw std::invalid_argument("sieve-dump: --limit must be >= 2");
  if (out_path.empty())
    throw std::invalid_argument("sieve-dump: need --dump-to (or --input to inspect)");
  m.param("limit", limit);
  m.param("output", out_path);
  const auto tables = rflab::build_sieve(pick_limit(g, limit));
  m.limit(tables.limit());
  tables.dump_file(out_path);
  out.add({cell::integer(tables.limit()),
           cell::integer(static_cast<std::int64_t>(tables.primes().size()))});
  emit(out, g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramanujan-sum toolkit: prime-pair correlation experiments, "
               "singular-series constants, zeta-measure probabilities"};
  app.require_subcommand(1);
  // several subcommands take --h as a parameter, so help is --help only;
  // fallthrough lets the global options appear after the subcommand
  auto restrict_help = [](CLI::App* a) {
    a->set_help_flag("--help", "Print this help message and exit");
    a->fallthrough();
  };
  restrict_help(&app);

  global_options g;
  std::map<std::string, out_format> format_names{
      {"csv", out_format::csv}, {"json", out_format::json_fmt}, {"table", out_format::table}};
  app.add_option("--format", g.format, "Output format")
      ->transform(CLI::CheckedTransformer(format_names))
      ->default_str("table");
  app.add_option("--precision", g.precision, "Decimal places for real output")
      ->check(CLI::Range(1, 15));
  app.add_option("--output", g.output_path, "Write results to a file instead of stdout");
  app.add_option("--limit", g.limit_override, "Sieve table limit override");
  app.add_option("--threads", g.threads,
                 "Cap on worker threads for chunked reductions (0 = machine)");
  app.add_option("--manifest", g.manifest_path,
                 "Append the run manifest to this file instead of stderr");

  wk_args wk;
  auto* wk_cmd = app.add_subcommand("wk-table",
                                    "Pair-correlation table: Psi(h,N), Psi/N and the "
                                    "ratio against C(h)");
  restrict_help(wk_cmd);
  wk_cmd->add_option("--h", wk.h, "Shift h");
  wk_cmd->add_option("--N-max", wk.n_max, "Largest N");
  wk_cmd->add_option("--step", wk.step, "Row spacing in N");
  wk_cmd->add_flag("--paper-defaults", wk.paper_defaults,
                   "N-max 10^6, step 10^5, reference-table weight");
  wk_cmd->add_option("--weight", wk.weight, "Summand convention")
      ->check(CLI::IsMember({"totient", "reference"}));

  std::int64_t sg_h = 0, sg_trunc = default_truncation_prime, sg_partial = 0;
  auto* sg_cmd = app.add_subcommand("singular", "Singular series C(h) and the A constant");
  restrict_help(sg_cmd);
  sg_cmd->add_option("--h", sg_h, "Shift h")->required();
  sg_cmd->add_option("--trunc", sg_trunc, "Largest prime in the Euler product");
  sg_cmd->add_option("--compare-partial", sg_partial,
                     "Also print the coefficient sum truncated at this Q");

  std::int64_t gb_n = 0;
  auto* gb_cmd = app.add_subcommand("goldbach", "Two-prime representation counts for even n");
  restrict_help(gb_cmd);
  gb_cmd->add_option("--n", gb_n, "Even target")->required();

  std::int64_t sb_n = 0;
  auto* sb_cmd = app.add_subcommand("sylvester-brun",
                                    "Historical Goldbach estimates next to the "
                                    "Hardy-Littlewood form");
  restrict_help(sb_cmd);
  sb_cmd->add_option("--n", sb_n, "Even target")->required();

  auto* rota_cmd = app.add_subcommand("rota", "Zeta-measure probability experiments");
  restrict_help(rota_cmd);
  rota_cmd->require_subcommand(1);
  rota_measure_args rm;
  auto* rm_cmd = rota_cmd->add_subcommand("measure", "Truncated P_s of a set");
  restrict_help(rm_cmd);
  rm_cmd->add_option("--set", rm.set, "all | multiples | squares | primes");
  rm_cmd->add_option("--k", rm.k, "Modulus for --set multiples");
  rm_cmd->add_option("--s", rm.s_values, "Exponent(s) s > 1");
  rm_cmd->add_option("--M", rm.m, "Truncation of the zeta sum");
  rm_cmd->add_option("--density-n", rm.density_n,
                     "Also report the finite arithmetic density at this n");

  std::int64_t rk_r = 0, rk_n = 1, rk_m = 1'000'000;
  double rk_s = 2.0;
  auto* rk_cmd = rota_cmd->add_subcommand(
      "kernel", "Joint-kernel probability on the divisor lattice");
  restrict_help(rk_cmd);
  rk_cmd->add_option("--r", rk_r, "Cyclic group order (omit for the profinite limit)");
  rk_cmd->add_option("--n", rk_n, "Subgroup order")->required();
  rk_cmd->add_option("--s", rk_s, "Number of characters drawn (any real > 1)");
  rk_cmd->add_option("--M", rk_m, "Zeta truncation for the profinite form");

  std::int64_t ri_p = 0, ri_q = 0, ri_m = 1'000'000;
  double ri_s = 2.0;
  auto* ri_cmd = rota_cmd->add_subcommand("independence",
                                          "P_s independence of divisibility by two primes");
  restrict_help(ri_cmd);
  ri_cmd->add_option("--p", ri_p, "First prime")->required();
  ri_cmd->add_option("--q", ri_q, "Second prime")->required();
  ri_cmd->add_option("--s", ri_s, "Exponent s > 1");
  ri_cmd->add_option("--M", ri_m, "Zeta truncation");

  std::int64_t gl_n = 0;
  auto* gl_cmd = app.add_subcommand("glaisher",
                                    "Closed form vs enumeration for partitions into "
                                    "parts <= 3");
  restrict_help(gl_cmd);
  gl_cmd->add_option("--n", gl_n, "Target n")->required();

  std::int64_t rf_qmax = 0, rf_n = 0;
  auto* rf_cmd = app.add_subcommand("rfcoef",
                                    "Empirical Ramanujan-Fourier coefficients of the "
                                    "weighted prime-power indicator");
  restrict_help(rf_cmd);
  rf_cmd->add_option("--q-max", rf_qmax, "Largest modulus")->required();
  rf_cmd->add_option("--N", rf_n, "Averaging length")->required();

  std::int64_t cs_q = 0;
  std::string cs_range;
  auto* cs_cmd = app.add_subcommand("csum", "Ramanujan sums c_q(n) over a range of n");
  restrict_help(cs_cmd);
  cs_cmd->add_option("--q", cs_q, "Modulus")->required();
  cs_cmd->add_option("--n", cs_range, "n or a..b range")->required();

  std::int64_t sd_limit = 0;
  std::string sd_out, sd_in;
  auto* sd_cmd = app.add_subcommand("sieve-dump",
                                    "Write (or inspect) a binary sieve-table snapshot");
  restrict_help(sd_cmd);
  sd_cmd->add_option("--limit", sd_limit, "Table extent to build and dump");
  sd_cmd->add_option("--dump-to", sd_out, "Snapshot path to write");
  sd_cmd->add_option("--input", sd_in, "Existing snapshot to inspect");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*wk_cmd) return run_wk_table(wk, g);
    if (*sg_cmd) return run_singular(sg_h, sg_trunc, sg_partial, g);
    if (*gb_cmd) return run_goldbach(gb_n, g);
    if (*sb_cmd) return run_sylvester_brun(sb_n, g);
    if (*rm_cmd) return run_rota_measure(rm, g);
    if (*rk_cmd) return run_rota_kernel(rk_r, rk_n, rk_s, rk_m, g);
    if (*ri_cmd) return run_rota_independence(ri_p, ri_q, ri_s, ri_m, g);
    if (*gl_cmd) return run_glaisher(gl_n, g);
    if (*rf_cmd) return run_rfcoef(rf_qmax, rf_n, g);
    if (*cs_cmd) return run_csum(cs_q, cs_range, g);
    if (*sd_cmd) return run_sieve_dump(sd_limit, sd_out, sd_in, g);
  } catch (const rflab::internal_consistency_error& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return 4;
  } catch (const rflab::resource_limit_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
