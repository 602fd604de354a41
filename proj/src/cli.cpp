#include "hcm/cli.hpp"

#include "hcm/bias.hpp"
#include "hcm/frobenius.hpp"
#include "hcm/hurwitz.hpp"
#include "hcm/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <variant>

namespace hcm {

namespace {

using Json = nlohmann::ordered_json;

enum class Mode { Text, Json, Csv };

// A cell is a rational or label (string), an integer, a real or a flag.
using Cell = std::variant<std::string, std::int64_t, double, bool>;
using Record = std::vector<std::pair<std::string, Cell>>;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

Json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          // Rounded to 12 digits so that the shortest round-trip form is what gets printed.
          return std::strtod(format_real(v).c_str(), nullptr);
        } else {
          return v;
        }
      },
      c);
}

Json record_json(const Record& r) {
  Json j = Json::object();
  for (const auto& [k, v] : r) j[k] = cell_json(v);
  return j;
}

void write_csv(std::ostream& os, const std::vector<Record>& rows, const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i].second);
    os << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<Record>& rows, const std::vector<std::string>& header) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_csv(os, rows, header);
  if (!os) throw IoError("write failed for " + path);
}

std::vector<std::string> header_of(const Record& r) {
  std::vector<std::string> out;
  for (const auto& kv : r) out.push_back(kv.first);
  return out;
}

void emit_record(std::ostream& out, Mode mode, const Record& r) {
  if (mode == Mode::Json) {
    out << record_json(r).dump(2) << '\n';
  } else if (mode == Mode::Csv) {
    write_csv(out, {r}, header_of(r));
  } else {
    // The last field is the answer; the others echo the inputs.
    out << cell_text(r.back().second) << '\n';
  }
}

void emit_summary(std::ostream& out, Mode mode, const Record& r) {
  if (mode == Mode::Text) {
    for (const auto& [k, v] : r) out << k << ' ' << cell_text(v) << '\n';
  } else {
    emit_record(out, mode, r);
  }
}

void emit_table(std::ostream& out, Mode mode, const std::vector<Record>& rows, const std::vector<std::string>& header) {
  if (mode == Mode::Json) {
    Json j = Json::array();
    for (const auto& r : rows) j.push_back(record_json(r));
    out << j.dump(2) << '\n';
    return;
  }
  if (mode == Mode::Csv) {
    write_csv(out, rows, header);
    return;
  }
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? " " : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << cell_text(r[i].second);
    out << '\n';
  }
}

Json report_json(const VerifySuiteReport& rep) {
  Json failures = Json::array();
  for (const auto& f : rep.failures) failures.push_back({{"inputs", f.inputs}, {"expected", f.expected}, {"got", f.got}});
  Json j = Json::object();
  j["suite"] = rep.suite;
  j["summary"] = rep.summary;
  j["checks"] = rep.checks;
  j["failed"] = rep.failed;
  j["failures"] = failures;
  j["notes"] = rep.notes;
  j["status"] = rep.passed() ? "pass" : "fail";
  return j;
}

void print_report(std::ostream& out, const VerifySuiteReport& rep) {
  out << (rep.passed() ? "PASS " : "FAIL ") << rep.suite << ": " << rep.summary << " (" << rep.checks << " checks";
  if (!rep.passed()) out << ", " << rep.failed << " failed";
  out << ")\n";
  for (const auto& f : rep.failures) {
    out << "  " << f.inputs << ": expected " << f.expected << ", got " << f.got << '\n';
  }
  for (const auto& n : rep.notes) out << "  note: " << n << '\n';
}

}  // namespace

std::string version_banner() {
  const Interpretation defaults;
  return std::string("hcm ") + kVersion + " (defaults: " + defaults.describe() + " delta=M|m)";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hurwitz class number moments in arithmetic progressions and Frobenius trace biases", "hcm"};
  app.set_version_flag("--version", version_banner());
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 1;
  bool json = false;
  bool csv = false;
  std::string eta0 = to_string(Eta0Reading::OddPart);
  std::string phi = to_string(PhiReading::Tilde);
  std::string psi_reading = to_string(PsiReading::Corrected);
  app.add_option("--threads", threads, "worker threads for batch commands")->check(CLI::Range(1, 256));
  auto* json_flag = app.add_flag("--json", json, "emit JSON");
  app.add_flag("--csv", csv, "emit CSV")->excludes(json_flag);
  app.add_option("--eta0", eta0, "reading of N_eta0")->check(CLI::IsMember({"odd", "hat-odd", "tilde-odd", "one"}));
  app.add_option("--phi", phi, "conductor in the phi factor")->check(CLI::IsMember({"tilde", "star"}));
  app.add_option("--psi", psi_reading, "local factor Psi")->check(CLI::IsMember({"corrected", "as-printed"}));

  std::int64_t D = 0, max_D = 0, k = 0, m = 0, M = 0, n = 0, max_n = 0, p = 0, X = 0;
  int r = 1;
  std::string out_path, kind, route = "closed", suite = "all";

  auto* c_hurwitz = app.add_subcommand("hurwitz", "Hurwitz class number H(D)");
  c_hurwitz->add_option("D", D)->required();

  auto* c_table = app.add_subcommand("hurwitz-table", "H(D) for 0 <= D <= max");
  c_table->add_option("--max", max_D)->required()->check(CLI::Range(std::int64_t{0}, HurwitzTable::kMaxEntries));
  c_table->add_option("--out", out_path, "CSV file");

  auto add_kmMn = [&](CLI::App* c) {
    c->add_option("--k", k)->required()->check(CLI::Range(0, 64));
    c->add_option("--m", m)->required();
    c->add_option("--M", M)->required()->check(CLI::PositiveNumber);
    c->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  };
  auto* c_moment = app.add_subcommand("moment", "H_{k,m,M}(n)");
  add_kmMn(c_moment);
  auto* c_lambda = app.add_subcommand("lambda", "lambda_{k,m,M}(n)");
  add_kmMn(c_lambda);

  auto* c_main = app.add_subcommand("main-term", "Eisenstein main term of H_{m,M}(n)");
  c_main->add_option("--m", m)->required();
  c_main->add_option("--M", M)->required()->check(CLI::PositiveNumber);
  c_main->add_option("--n", n)->required()->check(CLI::PositiveNumber);

  auto* c_residual = app.add_subcommand("residual", "cusp residuals for n = 1..max-n");
  c_residual->add_option("--m", m)->required();
  c_residual->add_option("--M", M)->required()->check(CLI::PositiveNumber);
  c_residual->add_option("--max-n", max_n)->required()->check(CLI::PositiveNumber);
  c_residual->add_option("--out", out_path, "CSV file");

  auto* c_trace = app.add_subcommand("trace-moment", "trace moments over F_{p^r} against Hurwitz moments");
  c_trace->add_option("--k", k)->required()->check(CLI::Range(0, 64));
  c_trace->add_option("--m", m)->required();
  c_trace->add_option("--M", M)->required()->check(CLI::PositiveNumber);
  c_trace->add_option("--p", p)->required();
  c_trace->add_option("--r", r)->required()->check(CLI::IsMember({1, 2}));

  auto* c_bias = app.add_subcommand("bias", "bias averages A1 or A2");
  c_bias->add_option("kind", kind)->required()->check(CLI::IsMember({"a1", "a2"}));
  c_bias->add_option("--m", m)->required();
  c_bias->add_option("--M", M)->required()->check(CLI::PositiveNumber);
  c_bias->add_option("--route", route)->check(CLI::IsMember({"closed", "chars", "printed"}));

  auto* c_signs = app.add_subcommand("signs", "sign theorems that apply to (m, M)");
  c_signs->add_option("--m", m)->required();
  c_signs->add_option("--M", M)->required()->check(CLI::PositiveNumber);

  auto* c_scan = app.add_subcommand("scan", "sign densities of A1 over 1 <= m <= M <= X");
  c_scan->add_option("--X", X)->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{5000}));
  c_scan->add_option("--out", out_path, "CSV file");

  auto* c_emp = app.add_subcommand("empirical", "A1 averaged over primes up to X");
  c_emp->add_option("--m", m)->required();
  c_emp->add_option("--M", M)->required()->check(CLI::PositiveNumber);
  c_emp->add_option("--X", X)->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{100'000'000}));

  auto* c_verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> choices = verify_suite_names();
  choices.insert(choices.begin(), "all");
  c_verify->add_option("suite", suite)->check(CLI::IsMember(choices));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Mode mode = json ? Mode::Json : csv ? Mode::Csv : Mode::Text;
  Interpretation interp;
  interp.eta0 = parse_eta0(eta0);
  interp.phi = parse_phi(phi);
  interp.psi = parse_psi(psi_reading);

  try {
    if (c_hurwitz->parsed()) {
      emit_record(out, mode, {{"D", D}, {"H", to_string(hurwitz_H(D))}});
    } else if (c_table->parsed()) {
      const HurwitzTable table(max_D, threads);
      std::vector<Record> rows;
      rows.reserve(static_cast<std::size_t>(max_D) + 1);
      for (std::int64_t d = 0; d <= max_D; ++d) rows.push_back({{"D", d}, {"H", to_string(table[d])}});
      if (!out_path.empty()) {
        write_csv_file(out_path, rows, {"D", "H"});
      } else {
        emit_table(out, mode, rows, {"D", "H"});
      }
    } else if (c_moment->parsed() || c_lambda->parsed()) {
      const bool is_moment = c_moment->parsed();
      const Rational v = is_moment ? moment_H(static_cast<int>(k), m, M, n) : lambda_km(static_cast<int>(k), m, M, n);
      emit_record(out, mode, {{"k", k}, {"m", m}, {"M", M}, {"n", n}, {is_moment ? "moment" : "lambda", to_string(v)}});
    } else if (c_main->parsed()) {
      emit_record(out, mode, {{"m", m}, {"M", M}, {"n", n}, {"main_term", main_term(m, M, n, interp)}});
    } else if (c_residual->parsed()) {
      std::vector<Record> rows;
      double worst = 0.0;
      for (const auto& row : residual_series(m, M, max_n, interp, threads)) {
        worst = std::max(worst, std::abs(row.residual));
        rows.push_back({{"n", row.n},
                        {"moment", to_string(row.moment)},
                        {"lambda", to_string(row.lambda)},
                        {"main_term", row.main_term},
                        {"residual", row.residual}});
      }
      const std::vector<std::string> header{"n", "moment", "lambda", "main_term", "residual"};
      if (!out_path.empty()) {
        write_csv_file(out_path, rows, header);
        emit_summary(out, mode,
                     {{"m", m}, {"M", M}, {"max_n", max_n}, {"rows", static_cast<std::int64_t>(rows.size())},
                      {"max_abs_residual", worst}, {"out", out_path}});
      } else {
        emit_table(out, mode, rows, header);
      }
    } else if (c_trace->parsed()) {
      if (p < 5 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("--p must be a prime >= 5");
      const TraceMassTable table(p, r);
      const Rational direct = S_direct(static_cast<int>(k), m, M, table);
      const Rational moments = S_via_moments(static_cast<int>(k), m, M, p, r);
      emit_summary(out, mode,
                   {{"k", k}, {"m", m}, {"M", M}, {"p", p}, {"r", static_cast<std::int64_t>(r)},
                    {"twice_S_direct", to_string(Rational(2 * direct))},
                    {"moment_side", to_string(Rational(2 * moments))}, {"equal", direct == moments}});
    } else if (c_bias->parsed()) {
      Cell value;
      if (route == "printed" && kind == "a1") throw std::invalid_argument("--route printed applies to a2 only");
      if (kind == "a1") {
        value = route == "closed" ? Cell{to_string(A1_closed(m, M))} : Cell{A1_chars(m, M, interp)};
      } else if (route == "closed") {
        value = to_string(A2_closed(m, M));
      } else {
        value = route == "chars" ? A2_chars(m, M, interp) : A2_printed(m, M, interp);
      }
      emit_record(out, mode, {{"average", kind}, {"route", route}, {"m", m}, {"M", M}, {"value", value}});
    } else if (c_signs->parsed()) {
      std::vector<Record> rows;
      for (const auto& s : sign_rules(m, M)) {
        rows.push_back({{"average", s.average}, {"rule", s.rule}, {"sign", static_cast<std::int64_t>(s.sign)}});
      }
      if (mode == Mode::Text) {
        for (const auto& s : sign_rules(m, M)) {
          const char* verdict = s.sign > 0 ? "positive" : s.sign < 0 ? "negative" : M == 1 ? "zero" : "nonzero";
          out << s.average << ' ' << verdict << ": " << s.rule << '\n';
        }
      } else {
        emit_table(out, mode, rows, {"average", "rule", "sign"});
      }
    } else if (c_scan->parsed()) {
      const auto rows = scan_A1(X, threads);
      const DensityReport d = density_from(rows, X);
      if (!out_path.empty()) {
        std::vector<Record> csv_rows;
        csv_rows.reserve(rows.size());
        for (const auto& row : rows) {
          csv_rows.push_back({{"m", row.m},
                              {"M", row.M},
                              {"a1_num", row.a1.get_num().get_str()},
                              {"a1_den", row.a1.get_den().get_str()},
                              {"sign", static_cast<std::int64_t>(sign(row.a1))}});
        }
        write_csv_file(out_path, csv_rows, {"m", "M", "a1_num", "a1_den", "sign"});
      }
      emit_summary(out, mode,
                   {{"X", X}, {"pairs", d.total()}, {"positive", d.positive}, {"zero", d.zero},
                    {"negative", d.negative}, {"positive_fraction", d.positive_fraction()},
                    {"zero_fraction", d.zero_fraction()}, {"negative_fraction", d.negative_fraction()}});
    } else if (c_emp->parsed()) {
      const double emp = empirical_A1(m, M, X, interp);
      const Rational closed = A1_closed(m, M);
      emit_summary(out, mode,
                   {{"m", m}, {"M", M}, {"X", X}, {"empirical", emp}, {"closed", to_string(closed)},
                    {"difference", emp - closed.get_d()}});
    } else if (c_verify->parsed()) {
      VerifyOptions options;
      options.threads = threads;
      options.interp = interp;
      std::vector<VerifySuiteReport> reports;
      if (suite == "all") {
        reports = run_all_suites(options);
      } else {
        reports.push_back(run_verify_suite(suite, options));
      }
      bool ok = true;
      Json j = Json::array();
      for (const auto& rep : reports) {
        ok = ok && rep.passed();
        if (mode == Mode::Json) {
          j.push_back(report_json(rep));
        } else {
          print_report(out, rep);
        }
      }
      if (mode == Mode::Json) out << j.dump(2) << '\n';
      return ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace hcm
