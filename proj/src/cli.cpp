#include "odforge/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>

#include "odforge/bounds.hpp"
#include "odforge/error.hpp"
#include "odforge/io.hpp"
#include "odforge/kernels.hpp"
#include "odforge/ssi.hpp"
#include "odforge/transform.hpp"

namespace odforge::cli {

namespace {

struct Common {
  std::string isa = "auto";
  std::uint64_t seed = 1;
  int trials = 3;
  unsigned threads = 0;
};

struct GenArgs {
  std::string family;
  int n = 0;
  std::string format = "json";
  std::string out_path;
  std::string verify = "both";
};

std::string extension(const std::string& format) {
  if (format == "latex") return "tex";
  if (format == "text") return "txt";
  return format;
}

// Runs the requested checks, prints their reports to err, returns the status.
VerificationStatus run_checks(const DesignMatrix& d, const std::string& mode, const Common& c, std::ostream& err) {
  VerificationStatus st;
  if (mode == "symbolic" || mode == "both") {
    VerifyOptions opts;
    opts.threads = c.threads;
    const SymbolicReport rep = verify_symbolic(d, opts);
    st.symbolic = rep.passed ? "pass" : "fail";
    err << rep.to_string() << "\n";
  }
  if (mode == "numeric" || mode == "both") {
    const NumericReport rep = verify_numeric(d, c.trials, c.seed);
    st.numeric = rep.passed ? "pass" : "fail";
    st.seed = c.seed;
    st.trials = c.trials;
    err << rep.to_string() << "\n";
  }
  return st;
}

bool failed(const VerificationStatus& st) { return st.symbolic == "fail" || st.numeric == "fail"; }

int write_output(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) {
    err << "error: cannot write " << path << "\n";
    return kUsage;
  }
  out << "wrote " << path << "\n";
  return kOk;
}

int cmd_gen(const GenArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const Family family = parse_family(a.family);
  DesignMatrix d;
  try {
    d = make_design(a.n, family);
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  }
  DesignDocument doc{std::move(d), {}};
  doc.verification = run_checks(doc.design, a.verify, c, err);
  const ValidationReport val = validate(doc.design.params(), family);
  err << "parameters " << doc.design.params().to_string() << " as " << family_name(family) << ": "
      << (val.passed ? "match" : "MISMATCH") << "\n"
      << val.to_string();

  std::string text;
  if (a.format == "json") {
    text = render_json(doc);
  } else if (a.format == "csv") {
    text = render_csv(doc.design);
  } else if (a.format == "latex") {
    text = render_latex(doc.design);
  } else {
    text = render_text(doc.design);
  }

  std::string path = a.out_path;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) {
      path = (std::filesystem::path(dir) / (a.family + "-n" + std::to_string(a.n) + "." + extension(a.format))).string();
    }
  }
  if (int rc = write_output(text, path, out, err); rc != kOk) return rc;
  return failed(doc.verification) || !val.passed ? kVerificationFailed : kOk;
}

int cmd_verify(const std::string& path, const Common& c, std::ostream& out, std::ostream& err) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot read " << path << "\n";
    return kParseFailure;
  }
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  DesignDocument doc;
  try {
    doc = parse_json(text);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseFailure;
  }
  std::ostringstream reports;
  const VerificationStatus st = run_checks(doc.design, "both", c, reports);
  out << kind_name(doc.design.kind()) << " " << doc.design.params().to_string() << " from " << path << "\n"
      << reports.str();
  return failed(st) ? kVerificationFailed : kOk;
}

std::string expected_params(const BigInt& p, int n, const BigInt& k) {
  std::ostringstream os;
  os << "[" << p << ", " << n << ", " << k << "]";
  return os.str();
}

int cmd_bounds(int n, std::ostream& out, std::ostream& err) {
  if (n < 2) {
    err << "error: --n must be at least 2\n";
    return kUsage;
  }
  const int d = delta(n);
  const Rational rate = liang_max_rate(n);
  const BigInt adams = adams_min_delay(n);
  const BigInt hr = BigInt(1) << d;
  out << "n = " << n << "\n"
      << "delta(n) = " << d << " (rate-1 real minimal delay " << hr << ")\n"
      << "maximal complex rate = " << rate.to_string() << "\n"
      << "minimal delay at maximal rate = " << adams << "\n"
      << "LA  " << expected_params(adams, n, adams * rate.num() / rate.den()) << "\n";
  if (n % 8 == 1) {
    out << "DR  not reached by the construction (n = 1 mod 8)\n"
        << "TJC not reached by the construction (n = 1 mod 8)\n";
  } else {
    out << "DR  " << expected_params(hr, n, hr / 2) << "\n"
        << "TJC " << expected_params(hr * 2, n, hr) << "\n";
  }
  return kOk;
}

int cmd_ssi(int n, int r, const std::string& format, const Common& c, std::ostream& out, std::ostream& err) {
  constexpr int kMaxSsiR = 8;
  DesignMatrix g;
  try {
    if (r > 0) {
      if (r > kMaxSsiR) throw UnsupportedError("ssi: r must be at most " + std::to_string(kMaxSsiR));
      g = assemble_rod(build_rate1_triple(r));
    } else {
      if (n > 2 * kMaxSsiR) throw UnsupportedError("ssi: n must be at most " + std::to_string(2 * kMaxSsiR));
      g = make_rate1_rod(n);
    }
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  }
  SSIdentity id;
  try {
    id = rod_to_ssi(g);
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
  const IdentityCheck check = check_identity(id, std::max(c.trials, 100), c.seed);
  if (format == "json") {
    out << render_ssi_json(id, check);
  } else {
    out << id.params().to_string() << " sum of squares identity\n" << render_identity_text(id);
  }
  err << "identity check: " << (check.passed ? "pass" : "FAIL") << " over " << check.trials
      << " random integer pairs\n";
  return check.passed ? kOk : kVerificationFailed;
}

struct ReportRow {
  int n;
  std::string tjc, dr, la, la_rate;
  bool ok;
};

std::string build_cell(int n, Family family, bool& ok) {
  try {
    const DesignMatrix d = make_cod(n, family);
    const bool valid = validate(d.params(), family).passed;
    ok = ok && valid;
    return d.params().to_string() + (valid ? "" : " (!)");
  } catch (const UnsupportedError&) {
    return "-";
  }
}

int cmd_report(int max_n, const std::string& format, std::ostream& out, std::ostream& err) {
  if (max_n < 2 || max_n > max_supported_n(Family::LA)) {
    err << "error: --max-n must be in [2, " << max_supported_n(Family::LA) << "]\n";
    return kUsage;
  }
  std::vector<ReportRow> rows;
  bool all_ok = true;
  for (int n = 2; n <= max_n; ++n) {
    ReportRow row{n, {}, {}, {}, liang_max_rate(n).to_string(), true};
    row.tjc = build_cell(n, Family::TJC, row.ok);
    row.dr = build_cell(n, Family::DR, row.ok);
    row.la = build_cell(n, Family::LA, row.ok);
    all_ok = all_ok && row.ok;
    rows.push_back(row);
  }
  if (format == "csv") {
    out << "n,tjc,dr,la,la_rate,bounds\n";
    for (const auto& r : rows) {
      out << r.n << ",\"" << r.tjc << "\",\"" << r.dr << "\",\"" << r.la << "\"," << r.la_rate << ","
          << (r.ok ? "ok" : "mismatch") << "\n";
    }
  } else {
    out << std::left << std::setw(4) << "n" << std::setw(18) << "TJC" << std::setw(18) << "DR" << std::setw(22)
        << "LA" << std::setw(9) << "LA rate"
        << "bounds\n";
    for (const auto& r : rows) {
      out << std::left << std::setw(4) << r.n << std::setw(18) << r.tjc << std::setw(18) << r.dr << std::setw(22)
          << r.la << std::setw(9) << r.la_rate << (r.ok ? "ok" : "mismatch") << "\n";
    }
  }
  return all_ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate and verify real and complex orthogonal designs", "odforge"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--isa", common.isa, "Kernel set: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto add_numeric = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Seed for numeric checks");
    sub->add_option("--trials", common.trials, "Numeric trials")->check(CLI::Range(1, 1000000));
  };

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Build a design");
  gen_cmd->add_option("--family", gen.family, "rate1-rod, la, dr or tjc")
      ->required()
      ->check(CLI::IsMember({"rate1-rod", "la", "dr", "tjc"}));
  gen_cmd->add_option("--n", gen.n, "Number of columns (antennas)")->required();
  gen_cmd->add_option("--format", gen.format, "json, csv, latex or text")
      ->check(CLI::IsMember({"json", "csv", "latex", "text"}));
  gen_cmd->add_option("--out", gen.out_path, "Output file");
  gen_cmd->add_option("--verify", gen.verify, "symbolic, numeric, both or none")
      ->check(CLI::IsMember({"symbolic", "numeric", "both", "none"}));
  gen_cmd->add_option("--threads", common.threads, "Threads for symbolic verification (0 = auto)");
  add_numeric(gen_cmd);

  std::string verify_path;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Re-check a stored design document");
  verify_cmd->add_option("path", verify_path, "JSON design document")->required();
  verify_cmd->add_option("--threads", common.threads, "Threads for symbolic verification (0 = auto)");
  add_numeric(verify_cmd);

  int bounds_n = 0;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Print the optimality bounds for n columns");
  bounds_cmd->add_option("--n", bounds_n, "Number of columns")->required();

  int ssi_n = 2, ssi_r = 0;
  std::string ssi_format = "text";
  CLI::App* ssi_cmd = app.add_subcommand("ssi", "Sum of squares identity from a rate-1 real design");
  auto* ssi_n_opt = ssi_cmd->add_option("--n", ssi_n, "Number of columns")->check(CLI::Range(2, 64));
  ssi_cmd->add_option("--r", ssi_r, "Use the rate-1 triple of this dimension instead")
      ->check(CLI::Range(1, 32))
      ->excludes(ssi_n_opt);
  ssi_cmd->add_option("--format", ssi_format, "text or json")->check(CLI::IsMember({"text", "json"}));
  add_numeric(ssi_cmd);

  int report_max = 16;
  std::string report_format = "text";
  CLI::App* report_cmd = app.add_subcommand("report", "Parameter table of the three complex families");
  report_cmd->add_option("--max-n", report_max, "Largest n in the table");
  report_cmd->add_option("--format", report_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    kernels::select(kernels::parse_isa(common.isa));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, common, out, err);
    if (*verify_cmd) return cmd_verify(verify_path, common, out, err);
    if (*bounds_cmd) return cmd_bounds(bounds_n, out, err);
    if (*ssi_cmd) return cmd_ssi(ssi_n, ssi_r, ssi_format, common, out, err);
    if (*report_cmd) return cmd_report(report_max, report_format, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace odforge::cli
