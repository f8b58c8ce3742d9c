// staircase: command-line front end for the library.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "staircase/staircase.hpp"

namespace fs = std::filesystem;
using namespace staircase;
using nlohmann::json;

namespace {

enum Exit : int {
  kOk = 0,
  kOther = 1,
  kUsage = 2,
  kParameter = 3,
  kCap = 4,
  kNumerical = 5,
  kVerifyFailed = 6,
  kInput = 7,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int n = -1;
  std::string alpha, beta, a, b;
  std::string gamma, delta;
  std::string rho = "1/2";
  std::uint64_t seed = 0;
  std::size_t samples = 1;
  unsigned workers = 1;
  int cap = -1;
  std::string format = "text";
  std::string output;
  bool use_float = false;

  // command-specific
  bool four = false, count = false, maximal = false, summary = false, stats = false;
  bool exact = false, symbolic = false, moments = false, showcase = false;
  int i = -1, j = -1, k = -1, row = -1;
  std::string cols, kind = "diag", mode = "fill", input, level = "desk", q = "1", u = "1";
  std::vector<int> only;
};

// --- output -----------------------------------------------------------------------

class Out {
public:
  explicit Out(const Config& c) : c_(c) {}

  std::ostringstream& os() { return os_; }

  json num(const Rational& x) const {
    if (c_.use_float)
      return to_double(x);
    return x.get_str();
  }

  /// Header plus rows of json cells; csv/text print strings unquoted.
  void table(const std::vector<std::string>& cols, const std::vector<std::vector<json>>& rows,
             json meta = json::object()) {
    if (c_.format == "json") {
      json doc = std::move(meta);
      json arr = json::array();
      for (const auto& r : rows) {
        json o = json::object();
        for (std::size_t k = 0; k < cols.size(); ++k)
          o[cols[k]] = r[k];
        arr.push_back(std::move(o));
      }
      doc["rows"] = std::move(arr);
      os_ << doc.dump() << '\n';
      return;
    }
    const char sep = c_.format == "csv" ? ',' : ' ';
    std::vector<std::vector<std::string>> cells;
    cells.push_back(cols);
    for (const auto& r : rows) {
      std::vector<std::string> line;
      for (const auto& v : r)
        line.push_back(cell(v));
      cells.push_back(std::move(line));
    }
    if (c_.format == "csv") {
      for (const auto& line : cells)
        for (std::size_t k = 0; k < line.size(); ++k)
          os_ << line[k] << (k + 1 < line.size() ? sep : '\n');
      return;
    }
    std::vector<std::size_t> w(cols.size(), 0);
    for (const auto& line : cells)
      for (std::size_t k = 0; k < line.size(); ++k)
        w[k] = std::max(w[k], line[k].size());
    for (const auto& line : cells) {
      std::string s;
      for (std::size_t k = 0; k < line.size(); ++k) {
        s += line[k];
        if (k + 1 < line.size())
          s += std::string(w[k] - line[k].size() + 2, ' ');
      }
      os_ << s << '\n';
    }
  }

  /// Writes to stdout, or atomically to --output (temp file in the same directory, then rename).
  void flush() {
    const std::string s = os_.str();
    if (c_.output.empty()) {
      std::cout << s << std::flush;
      return;
    }
    fs::path target(c_.output);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
      std::ofstream f(tmp, std::ios::binary);
      if (!f)
        throw std::runtime_error("cannot write " + tmp.string());
      f << s;
      if (!f.flush())
        throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
  }

private:
  static std::string cell(const json& v) {
    if (v.is_string())
      return v.get<std::string>();
    if (v.is_number_float()) {
      std::ostringstream s;
      s << std::setprecision(17) << v.get<double>();
      return s.str();
    }
    return v.dump();
  }

  const Config& c_;
  std::ostringstream os_;
};

// --- parameter plumbing --------------------------------------------------------------

Params resolve_params(const Config& c) {
  const bool weights = !c.alpha.empty() || !c.beta.empty();
  const bool inverse = !c.a.empty() || !c.b.empty();
  if (weights && inverse)
    throw UsageError("use either --alpha/--beta or --a/--b, not both");
  const Rational rho = parse_rational(c.rho);
  Params p;
  if (inverse)
    p = Params{parse_ext_rational(c.a.empty() ? "1" : c.a), parse_ext_rational(c.b.empty() ? "1" : c.b), rho};
  else
    p = Params::from_weights(parse_ext_rational(c.alpha.empty() ? "1" : c.alpha),
                             parse_ext_rational(c.beta.empty() ? "1" : c.beta), rho);
  p.check();
  return p;
}

std::pair<Rational, Rational> finite_ab(const Config& c) {
  Params p = resolve_params(c);
  if (p.a.infinite || p.b.infinite)
    throw ParameterError("this command needs alpha, beta > 0 (finite a and b)");
  return {p.a.value, p.b.value};
}

int require_n(const Config& c, int min = 0) {
  if (c.n < min)
    throw UsageError("--n is required and must be >= " + std::to_string(min));
  return c.n;
}

int ab_cap(const Config& c) { return c.cap >= 0 ? c.cap : kDefaultAbCap; }
int four_cap(const Config& c) { return c.cap >= 0 ? c.cap : kDefaultFourCap; }

json params_meta(const Params& p) {
  return {{"a", to_string(p.a)}, {"b", to_string(p.b)}, {"rho", p.rho.get_str()}};
}

void emit_tableaux(Out& out, const Config& c, const std::vector<Tableau>& ts) {
  if (c.format == "json") {
    for (const auto& t : ts)
      out.os() << serialize(t) << '\n';
    return;
  }
  if (c.format == "csv") {
    out.os() << "index,row,col,sym\n";
    for (std::size_t k = 0; k < ts.size(); ++k)
      for (const Cell& cell : ts[k].cells())
        out.os() << k << ',' << cell.row << ',' << cell.col << ',' << symbol_name(cell.sym) << '\n';
    return;
  }
  for (std::size_t k = 0; k < ts.size(); ++k)
    out.os() << (k ? "\n" : "") << render_text(ts[k]);
}

// --- commands ---------------------------------------------------------------------

int cmd_sample(const Config& c, Out& out) {
  const int n = require_n(c);
  if (c.samples < 1)
    throw UsageError("--samples must be positive");
  if (!c.gamma.empty() || !c.delta.empty()) {
    if (!c.a.empty() || !c.b.empty())
      throw UsageError("four-symbol sampling takes --alpha/--beta/--gamma/--delta");
    auto fin = [](const std::string& s) { return parse_rational(s.empty() ? "0" : s); };
    FourSamplerPlan plan(n, parse_rational(c.alpha.empty() ? "1" : c.alpha),
                         parse_rational(c.beta.empty() ? "1" : c.beta), fin(c.gamma), fin(c.delta));
    emit_tableaux(out, c, sample_many(plan, c.samples, c.seed, c.workers));
    return kOk;
  }
  Params p = resolve_params(c);
  if (!c.summary && !c.stats) {
    emit_tableaux(out, c, sample_many(SamplerPlan(n, p), c.samples, c.seed, c.workers));
    return kOk;
  }
  Batch b = sample_batch(n, p, c.seed, c.samples, c.workers);
  json meta = params_meta(p);
  meta["n"] = n;
  meta["seed"] = c.seed;
  if (c.stats) {
    out.table({"count", "mean_A", "var_A"},
              {{json(b.stats.count), out.num(b.stats.mean_A()), out.num(b.stats.var_A())}}, meta);
    return kOk;
  }
  std::vector<std::vector<json>> rows;
  for (std::size_t k = 0; k < b.samples.size(); ++k) {
    const auto& s = b.samples[k];
    rows.push_back({json(k), s.A, s.B, s.n_alpha, s.n_beta, s.r, s.diagonal});
  }
  out.table({"index", "A", "B", "n_alpha", "n_beta", "r", "diagonal"}, rows, meta);
  return kOk;
}

int cmd_enumerate(const Config& c, Out& out) {
  const int n = require_n(c);
  if (c.maximal) {
    auto m = max_symbol_tableaux(n, ab_cap(c));
    if (c.count)
      out.table({"n", "count"}, {{n, m.size()}});
    else
      emit_tableaux(out, c, m);
    return kOk;
  }
  if (c.count) {
    std::uint64_t k = c.four ? count_four(n, four_cap(c)) : count_ab(n, ab_cap(c));
    out.table({"n", "count"}, {{n, k}});
    return kOk;
  }
  // stream without holding everything in memory
  const bool json_mode = c.format == "json", csv = c.format == "csv";
  std::size_t idx = 0;
  auto emit = [&](const Tableau& t) {
    if (json_mode) {
      out.os() << serialize(t) << '\n';
    } else if (csv) {
      for (const Cell& cell : t.cells())
        out.os() << idx << ',' << cell.row << ',' << cell.col << ',' << symbol_name(cell.sym) << '\n';
    } else {
      out.os() << (idx ? "\n" : "") << render_text(t);
    }
    ++idx;
  };
  if (csv)
    out.os() << "index,row,col,sym\n";
  if (c.four) {
    FourTableauStream s(n, four_cap(c));
    for_each_tableau(s, emit);
  } else {
    AbTableauStream s(n, ab_cap(c));
    for_each_tableau(s, emit);
  }
  return kOk;
}

int cmd_dist_a(const Config& c, Out& out) {
  const int n = require_n(c);
  Params p = resolve_params(c);
  DiscreteDist d = dist_A(n, p);
  std::vector<std::vector<json>> rows;
  for (int k = 0; k <= n; ++k)
    rows.push_back({k, out.num(d(k))});
  json meta = params_meta(p);
  meta["n"] = n;
  out.table({"k", "p"}, rows, meta);
  return kOk;
}

int cmd_moments_a(const Config& c, Out& out) {
  const int n = require_n(c);
  auto [a, b] = finite_ab(c);
  Moments m = moments_A(n, a, b);
  out.table({"n", "a", "b", "mean", "variance"}, {{n, a.get_str(), b.get_str(), out.num(m.mean), out.num(m.variance)}});
  return kOk;
}

int cmd_decompose(const Config& c, Out& out) {
  const int n = require_n(c, 1);
  auto [a, b] = finite_ab(c);
  BernoulliDecomp d = bernoulli_decomposition(n, a, b);
  std::vector<std::vector<json>> rows;
  for (std::size_t k = 0; k < d.p.size(); ++k)
    rows.push_back({k + 1, d.p[k], std::isfinite(d.xi[k]) ? json(d.xi[k]) : json("inf")});
  json meta{{"n", n}, {"a", a.get_str()}, {"b", b.get_str()}, {"sum_p", d.sum()},
            {"tv_to_exact", d.total_variation(dist_A(n, a, b))}};
  out.table({"i", "p", "xi"}, rows, meta);
  return kOk;
}

int cmd_pairs_n(const Config& c, Out& out) {
  const int n = require_n(c);
  auto [a, b] = finite_ab(c);
  if (c.moments) {
    NMoments m = moments_N(n, a, b);
    out.table({"n", "mean_alpha", "var_alpha", "mean_beta", "var_beta", "cov"},
              {{n, out.num(m.mean_alpha), out.num(m.var_alpha), out.num(m.mean_beta), out.num(m.var_beta),
                out.num(m.cov)}});
    return kOk;
  }
  std::vector<std::vector<json>> rows;
  auto pairs = dist_N_pairs(n, a, b);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    rows.push_back({i, out.num(pairs[i].p10), out.num(pairs[i].p01), out.num(pairs[i].p11)});
  out.table({"i", "p10", "p01", "p11"}, rows);
  return kOk;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(tok, &used));
      if (used != tok.size())
        throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw UsageError("bad integer list '" + s + "'");
    }
  }
  return v;
}

int cmd_positions(const Config& c, Out& out) {
  const int n = require_n(c, 1);
  auto [a, b] = finite_ab(c);
  if (c.kind == "diag") {
    std::vector<std::vector<json>> rows;
    for (int i = 1; i <= n; ++i)
      if (c.i < 0 || c.i == i)
        rows.push_back({i, diag_column_of_row(n, i), out.num(diag_prob(n, a, b, i))});
    if (rows.empty())
      throw DomainError("diagonal row outside 1..n");
    out.table({"row", "col", "p_alpha"}, rows);
  } else if (c.kind == "cell") {
    if (c.i < 0 || c.j < 0)
      throw UsageError("--kind cell needs --i and --j");
    CellProb p = cell_prob(n, a, b, c.i, c.j);
    out.table({"row", "col", "p_alpha", "p_beta", "p_filled"},
              {{c.i, c.j, out.num(p.alpha), out.num(p.beta), out.num(p.filled)}});
  } else if (c.kind == "joint") {
    if (c.cols.empty())
      throw UsageError("--kind joint needs --cols j1,j2,...");
    auto cols = parse_int_list(c.cols);
    out.table({"cols", "p_all_alpha"}, {{c.cols, out.num(joint_diag_alpha(n, a, b, cols))}});
  } else if (c.kind == "cov") {
    if (c.j < 0 || c.k < 0)
      throw UsageError("--kind cov needs --j and --k (diagonal columns)");
    out.table({"j", "k", "cov"}, {{c.j, c.k, out.num(diag_cov(n, a, b, c.j, c.k))}});
  } else {
    throw UsageError("unknown --kind '" + c.kind + "'");
  }
  return kOk;
}

int cmd_subcheck(const Config& c, Out& out) {
  const int n = require_n(c, 1);
  auto [a, b] = finite_ab(c);
  if (c.i < 1 || c.j < 1)
    throw UsageError("subcheck needs --i and --j");
  SubLawReport r = subtableau_law_check(n, a, b, c.i, c.j, ab_cap(c));
  out.table({"n", "i", "j", "equal", "support", "first_difference"},
            {{n, c.i, c.j, r.equal, r.support, r.first_difference}});
  return r.equal ? kOk : kVerifyFailed;
}

int cmd_urn(const Config& c, Out& out) {
  const int n = require_n(c);
  auto [a, b] = finite_ab(c);
  if (c.exact) {
    auto law = urn_law(n, a, b);
    std::vector<std::vector<json>> rows;
    for (int k = 0; k <= n; ++k)
      rows.push_back({k, out.num(law[k])});
    out.table({"k", "p"}, rows);
    return kOk;
  }
  UrnPlan plan(n, a, b);
  std::vector<UrnPath> paths(c.samples);
  run_shards(c.samples, c.seed, c.workers, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k)
      paths[k] = plan.run(rng);
  });
  std::vector<std::vector<json>> rows;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    std::string draws;
    for (bool w : paths[k].white)
      draws.push_back(w ? 'w' : 'b');
    rows.push_back({k, paths[k].A, paths[k].B, draws});
  }
  out.table({"index", "A", "B", "draws"}, rows);
  return kOk;
}

int cmd_triangle(const Config& c, Out& out) {
  const int n_max = require_n(c);
  std::vector<std::vector<json>> rows;
  const int lo = c.row >= 0 ? c.row : 0;
  if (c.row > n_max)
    throw DomainError("--row exceeds --n");
  if (c.symbolic) {
    for (int n = lo; n <= n_max; ++n) {
      auto row = v_symbolic_row(n);
      for (int k = 0; k <= n; ++k)
        rows.push_back({n, k, row[k].to_string()});
    }
    out.table({"n", "k", "v"}, rows);
    return kOk;
  }
  auto [a, b] = finite_ab(c);
  EulerTriangle t(n_max, a, b);
  for (int n = lo; n <= n_max; ++n)
    for (int k = 0; k <= n; ++k)
      rows.push_back({n, k, out.num(t.v(n, k))});
  out.table({"n", "k", "v"}, rows, {{"a", a.get_str()}, {"b", b.get_str()}});
  return kOk;
}

Tableau read_input(const Config& c) {
  if (c.showcase)
    return fixtures::showcase_size8();
  if (c.input.empty())
    throw UsageError("give --input FILE (tableau JSON, '-' for stdin) or --showcase");
  std::stringstream buf;
  if (c.input == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream f(c.input);
    if (!f)
      throw ParseError("cannot read " + c.input);
    buf << f.rdbuf();
  }
  return parse(buf.str());
}

int cmd_asep(const Config& c, Out& out) {
  if (c.mode == "zfull") {
    const int n = require_n(c);
    auto w = [](const std::string& s) { return parse_rational(s.empty() ? "1" : s); };
    Rational z = z_full(n, w(c.alpha), w(c.beta), w(c.gamma), w(c.delta), w(c.q), w(c.u), four_cap(c));
    out.table({"n", "z"}, {{n, out.num(z)}});
    return kOk;
  }
  Tableau t = read_input(c);
  FilledTableau f = fill_uq(t);
  if (c.mode == "weight") {
    auto e = wtx(f);
    out.table({"alpha", "beta", "gamma", "delta", "u", "q"}, {{e[0], e[1], e[2], e[3], e[4], e[5]}});
    return kOk;
  }
  if (c.mode != "fill")
    throw UsageError("unknown --mode '" + c.mode + "'");
  if (c.format == "json") {
    out.os() << to_json(f).dump() << '\n';
  } else if (c.format == "csv") {
    out.os() << "row,col,entry\n";
    for (int i = 1; i <= f.size(); ++i)
      for (int j = 1; j <= t.row_length(i); ++j) {
        auto s = t.at(i, j);
        out.os() << i << ',' << j << ',' << (s ? std::string(symbol_name(*s)) : std::string(1, label_letter(f.label(i, j))))
                 << '\n';
      }
  } else {
    out.os() << render_text(f);
  }
  return kOk;
}

int cmd_clt(const Config& c, Out& out) {
  const int n = require_n(c, 10);
  auto [a, b] = finite_ab(c);
  CltReport r = clt_diagnostics(n, a, b);
  out.table({"n", "mean", "sd", "ks_to_normal", "llt_max_residual"},
            {{n, r.mean, r.sd, r.ks_to_normal, r.llt_max_residual}});
  return kOk;
}

int cmd_verify(const Config& c, Out& out) {
  int failed = 0;
  auto results = run_acceptance(c.level, c.only, [&](const CriterionResult& r) {
    failed += !r.pass;
    if (c.format == "text" && c.output.empty())
      std::cout << format_result(r) << std::endl; // live progress
  });
  if (c.format == "text") {
    if (!c.output.empty())
      for (const auto& r : results)
        out.os() << format_result(r) << '\n';
    std::ostringstream tail;
    tail << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    if (c.output.empty())
      std::cout << tail.str();
    else
      out.os() << tail.str();
  } else {
    std::vector<std::vector<json>> rows;
    for (const auto& r : results)
      rows.push_back({r.id, r.title, r.pass, r.seconds, r.detail});
    out.table({"id", "title", "pass", "seconds", "detail"}, rows, {{"level", c.level}});
  }
  return failed ? kVerifyFailed : kOk;
}

// --- wiring -----------------------------------------------------------------------

void add_common(CLI::App* s, Config& c) {
  s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  s->add_option("-o,--output", c.output, "write output to this file (atomically)");
  s->add_flag("--float", c.use_float, "print floating point instead of exact rationals");
}

void add_params(CLI::App* s, Config& c) {
  s->add_option("--n", c.n, "tableau size");
  s->add_option("--alpha", c.alpha, "weight alpha (rational or inf)");
  s->add_option("--beta", c.beta, "weight beta (rational or inf)");
  s->add_option("--a", c.a, "inverse weight a = 1/alpha");
  s->add_option("--b", c.b, "inverse weight b = 1/beta");
  s->add_option("--rho", c.rho, "probability of alpha in box (1,1) when a = b = 0");
}

void add_sampling(CLI::App* s, Config& c) {
  s->add_option("--seed", c.seed, "random seed");
  s->add_option("--samples", c.samples, "number of samples");
  s->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1u, 1024u));
}

void add_cap(CLI::App* s, Config& c) { s->add_option("--cap", c.cap, "largest n for exhaustive enumeration"); }

int run(int argc, char** argv) {
  Config c;
  if (const char* env = std::getenv("STAIRCASE_CAP")) {
    try {
      c.cap = std::stoi(env);
    } catch (const std::logic_error&) {
      std::cerr << "error: STAIRCASE_CAP must be an integer\n";
      return kUsage;
    }
  }
  CLI::App app{"Exact computation, sampling and verification for staircase tableaux"};
  app.require_subcommand(1);

  std::map<CLI::App*, std::function<int(const Config&, Out&)>> handlers;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Config&, Out&)) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, c);
    handlers[s] = fn;
    return s;
  };

  auto* sample = sub("sample", "sample random tableaux", cmd_sample);
  add_params(sample, c);
  add_sampling(sample, c);
  sample->add_option("--gamma", c.gamma, "four-symbol weight gamma");
  sample->add_option("--delta", c.delta, "four-symbol weight delta");
  sample->add_flag("--summary", c.summary, "print per-sample statistics instead of tableaux");
  sample->add_flag("--stats", c.stats, "print exact batch statistics of A");

  auto* enumerate = sub("enumerate", "list or count tableaux", cmd_enumerate);
  enumerate->add_option("--n", c.n, "tableau size");
  enumerate->add_flag("--four", c.four, "use all four symbols");
  enumerate->add_flag("--count", c.count, "print the count only");
  enumerate->add_flag("--maximal", c.maximal, "only alpha/beta tableaux with 2n-1 symbols");
  add_cap(enumerate, c);

  add_params(sub("dist-a", "exact law of A", cmd_dist_a), c);
  add_params(sub("moments-a", "mean and variance of A", cmd_moments_a), c);
  add_params(sub("decompose", "A as a sum of independent Bernoulli variables", cmd_decompose), c);

  auto* pairs = sub("pairs-n", "pair laws behind (N_alpha, N_beta)", cmd_pairs_n);
  add_params(pairs, c);
  pairs->add_flag("--moments", c.moments, "print exact moments instead");

  auto* positions = sub("positions", "box occupation probabilities", cmd_positions);
  add_params(positions, c);
  positions->add_option("--kind", c.kind, "diag | cell | joint | cov")
      ->check(CLI::IsMember({"diag", "cell", "joint", "cov"}));
  positions->add_option("--i", c.i, "row");
  positions->add_option("--j", c.j, "column");
  positions->add_option("--k", c.k, "second diagonal column (cov)");
  positions->add_option("--cols", c.cols, "increasing diagonal columns, comma separated");

  auto* subcheck = sub("subcheck", "compare a subtableau law with the smaller tableau law", cmd_subcheck);
  add_params(subcheck, c);
  subcheck->add_option("--i", c.i, "corner row");
  subcheck->add_option("--j", c.j, "corner column");
  add_cap(subcheck, c);

  auto* urn = sub("urn", "Friedman urn paths or exact law", cmd_urn);
  add_params(urn, c);
  add_sampling(urn, c);
  urn->add_flag("--exact", c.exact, "print the exact law of A_n");

  auto* triangle = sub("triangle", "generalized Eulerian numbers v(n,k)", cmd_triangle);
  add_params(triangle, c);
  triangle->add_flag("--symbolic", c.symbolic, "polynomials in a and b");
  triangle->add_option("--row", c.row, "print only rows from this one on");

  auto* asep = sub("asep", "u/q fillings and the six-parameter partition function", cmd_asep);
  asep->add_option("--mode", c.mode, "fill | weight | zfull")->check(CLI::IsMember({"fill", "weight", "zfull"}));
  asep->add_option("--input", c.input, "tableau JSON file, '-' for stdin");
  asep->add_flag("--showcase", c.showcase, "use the built-in size-8 example");
  asep->add_option("--n", c.n, "size for zfull");
  asep->add_option("--alpha", c.alpha, "weight alpha");
  asep->add_option("--beta", c.beta, "weight beta");
  asep->add_option("--gamma", c.gamma, "weight gamma");
  asep->add_option("--delta", c.delta, "weight delta");
  asep->add_option("--q", c.q, "weight q");
  asep->add_option("--u", c.u, "weight u");
  add_cap(asep, c);

  add_params(sub("clt", "normal approximation diagnostics for A", cmd_clt), c);

  auto* verify = sub("verify", "run the acceptance suite", cmd_verify);
  verify->add_option("--level", c.level, "verification level")->check(CLI::IsMember({"desk"}));
  verify->add_option("--only", c.only, "criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Out out(c);
  int code = handlers.at(chosen)(c, out);
  out.flush();
  return code;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameter;
  } catch (const DomainError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameter;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const StructuralError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
}
