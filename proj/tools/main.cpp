// Batch front-end: construct algebras, dump bases and structure-constant
// tables, run verification suites, benchmark table builds, and manage the
// persisted table cache.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "schurdouble/json_io.hpp"
#include "schurdouble/presets.hpp"
#include "schurdouble/quiver.hpp"
#include "schurdouble/schur.hpp"
#include "schurdouble/turner_double.hpp"
#include "schurdouble/verify.hpp"

namespace fs = std::filesystem;
using namespace schurdouble;
using ordered = nlohmann::ordered_json;

namespace {

struct JobSpec {
  std::string preset_name = "trivial";
  std::string presentation_file;
  int n = 1;
  int d = 1;
  std::string ring = "z";  // z | q | fp
  unsigned long p = 0;
  std::string out;
  std::string mode = "verified";  // formula | oracle | verified
  unsigned long seed = 17;
  int max_d = 5;
  std::string cache_dir;
};

Presentation load_algebra(const JobSpec& job) {
  if (!job.presentation_file.empty()) {
    std::ifstream in(job.presentation_file);
    if (!in) throw InputError("cannot open " + job.presentation_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return presentation_from_json(ss.str());
  }
  return preset(job.preset_name);
}

void validate(const JobSpec& job) {
  if (job.d < 0 || job.d > job.max_d)
    throw InputError("d out of range (configured maximum " +
                     std::to_string(job.max_d) + ", override with --max-d)");
  if (job.n < 1) throw InputError("n must be positive");
  if (job.ring == "fp") {
    if (!is_prime(job.p)) throw InputError("--p must be prime for the F_p ring");
  } else if (job.ring != "z" && job.ring != "q") {
    throw InputError("--ring must be one of z, q, fp");
  }
}

std::string ring_name(const JobSpec& job) {
  if (job.ring == "fp") return "fp" + std::to_string(job.p);
  return job.ring;
}

// Scalars are computed over Z; the F_p output is the coefficientwise
// reduction (a ring homomorphism, so it agrees with computing over F_p).
std::string render_coeff(const Int& c, const JobSpec& job) {
  if (job.ring == "fp") return mod_reduce(c, job.p).get_str();
  return c.get_str();
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  fs::path target(out);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw InputError("cannot write " + out);
    os << text;
  }
  fs::rename(tmp, target);
}

std::string cache_root(const JobSpec& job) {
  if (!job.cache_dir.empty()) return job.cache_dir;
  if (const char* env = std::getenv("SCHURDOUBLE_CACHE_DIR")) return env;
  return "";
}

int cmd_basis(const JobSpec& job, bool pairs) {
  Presentation a = load_algebra(job);
  std::ostringstream os;
  if (!pairs) {
    SchurAlgebra s(a, job.n, job.d);
    ordered head;
    head["type"] = "basis";
    head["algebra"] = a.name;
    head["presentation_hash"] = presentation_hash(a);
    head["n"] = job.n;
    head["d"] = job.d;
    head["count"] = s.dim();
    os << head.dump() << "\n";
    for (int i = 0; i < s.dim(); ++i) {
      ordered rec;
      rec["index"] = i;
      rec["tuple"] = ordered(s.tuples().tuple(i));
      rec["label"] = s.label(i);
      rec["parity"] = s.parity(i);
      if (a.basis.graded()) rec["degree"] = s.z_degree(i);
      os << rec.dump() << "\n";
    }
  } else {
    MatrixSuperalgebra mna = matrix_superalgebra(a, job.n);
    DoubleSpace ds(mna.pres, job.d);
    ordered head;
    head["type"] = "double-basis";
    head["algebra"] = a.name;
    head["n"] = job.n;
    head["d"] = job.d;
    head["count"] = ds.dim();
    os << head.dump() << "\n";
    for (int i = 0; i < ds.dim(); ++i) {
      ordered rec;
      rec["index"] = i;
      rec["inv"] = ordered(ds.inv_part(i));
      rec["sym"] = ordered(ds.sym_part(i));
      rec["label"] = ds.pair_label(i);
      os << rec.dump() << "\n";
    }
  }
  emit(job.out, os.str());
  return 0;
}

int cmd_constants(const JobSpec& job) {
  Presentation a = load_algebra(job);
  SchurAlgebra s(a, job.n, job.d);
  const std::string key = presentation_hash(a) + "-n" + std::to_string(job.n) +
                          "-d" + std::to_string(job.d) + "-" + job.mode +
                          "-basisorder1";
  const std::string root = cache_root(job);
  StructureConstantTable table;
  bool loaded = false;
  if (!root.empty()) {
    fs::path cached = fs::path(root) / (key + ".jsonl");
    if (fs::exists(cached)) {
      std::ifstream in(cached);
      table = read_table(in, s);
      loaded = true;
    }
  }
  if (!loaded) {
    SchurAlgebra::Mode mode = SchurAlgebra::Mode::Verified;
    if (job.mode == "formula") mode = SchurAlgebra::Mode::Formula;
    else if (job.mode == "oracle") mode = SchurAlgebra::Mode::Oracle;
    else if (job.mode != "verified") throw InputError("bad --mode");
    table = s.build_table(mode);
    if (!root.empty()) {
      fs::create_directories(root);
      fs::path cached = fs::path(root) / (key + ".jsonl");
      fs::path tmp = cached;
      tmp += ".tmp";
      {
        std::ofstream osf(tmp);
        write_table(osf, s, table, "z");
      }
      fs::rename(tmp, cached);
    }
  }
  std::ostringstream os;
  if (job.ring == "z" || job.ring == "q") {
    write_table(os, s, table, ring_name(job));
  } else {
    // reduce coefficients mod p on output
    StructureConstantTable red = table;
    for (auto& [k, f] : red.entries) {
      SparseVec nf;
      for (const auto& [i, c] : f) {
        Int m = mod_reduce(c, job.p);
        if (m != 0) nf[i] = m;
      }
      f = std::move(nf);
    }
    for (auto it = red.entries.begin(); it != red.entries.end();)
      it = it->second.empty() ? red.entries.erase(it) : std::next(it);
    write_table(os, s, red, ring_name(job));
  }
  emit(job.out, os.str());
  return 0;
}

int cmd_double(const JobSpec& job) {
  Presentation a = load_algebra(job);
  MatrixSuperalgebra mna = matrix_superalgebra(a, job.n);
  DoubleSpace ds(mna.pres, job.d);
  std::ostringstream os;
  ordered head;
  head["type"] = "double";
  head["algebra"] = a.name;
  head["presentation_hash"] = presentation_hash(a);
  head["n"] = job.n;
  head["d"] = job.d;
  head["dim"] = ds.dim();
  head["ring"] = ring_name(job);
  os << head.dump() << "\n";
  // phi matrix (signed index bijection onto the T_X orbit basis)
  for (int i = 0; i < ds.dim(); ++i) {
    ordered rec;
    rec["type"] = "phi";
    rec["pair"] = i;
    rec["tx_tuple"] = ordered(ds.tx_tuples().tuple(ds.phi_tuple(i)));
    rec["sign"] = ds.phi_sign(i);
    os << rec.dump() << "\n";
  }
  // Gram matrix rows (sparse)
  for (int i = 0; i < ds.dim(); ++i) {
    ordered row = ordered::object();
    for (int j = 0; j < ds.dim(); ++j) {
      Int v = ds.form(i, j);
      if (v != 0) row[std::to_string(j)] = render_coeff(v, job);
    }
    ordered rec;
    rec["type"] = "gram";
    rec["row"] = i;
    rec["cols"] = std::move(row);
    os << rec.dump() << "\n";
  }
  // product tables, plain and divided
  for (const char* variant : {"plain", "divided"}) {
    const DoubleVariant v = std::string(variant) == "plain"
                                ? DoubleVariant::Plain
                                : DoubleVariant::Divided;
    for (int i = 0; i < ds.dim(); ++i)
      for (int j = 0; j < ds.dim(); ++j) {
        DoubleElement p = ds.multiply(ds.basis_element(i, v),
                                      ds.basis_element(j, v));
        if (p.is_zero()) continue;
        ordered rec;
        rec["type"] = std::string("product-") + variant;
        rec["i"] = i;
        rec["j"] = j;
        ordered out_o = ordered::object();
        for (const auto& [k, c] : p.coords)
          out_o[std::to_string(k)] = render_coeff(c, job);
        rec["out"] = std::move(out_o);
        os << rec.dump() << "\n";
      }
  }
  emit(job.out, os.str());
  return 0;
}

int cmd_verify(const JobSpec& job, const std::string& suite, bool has_preset) {
  SuiteOptions opt;
  opt.seed = job.seed;
  if (has_preset) {
    opt.preset = job.preset_name;
    opt.n = job.n;
    opt.d = job.d;
  }
  std::vector<SuiteResult> results;
  if (suite == "all") {
    results = run_all(opt);
  } else {
    results.push_back(run_suite(suite, opt));
  }
  bool ok = true;
  for (const SuiteResult& r : results) {
    std::printf("%-20s %s  (%.2fs)  %s\n", r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    ok = ok && r.pass;
  }
  return ok ? 0 : 2;
}

int cmd_bench(const JobSpec& job, int repeats) {
  Presentation a = load_algebra(job);
  SchurAlgebra s(a, job.n, job.d);
  std::ostringstream os;
  for (const char* mode : {"formula", "oracle"}) {
    double best = 1e100;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      s.build_table(std::string(mode) == "formula"
                        ? SchurAlgebra::Mode::Formula
                        : SchurAlgebra::Mode::Oracle);
      double dt = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      best = std::min(best, dt);
    }
    ordered rec;
    rec["bench"] = std::string("constants-") + mode;
    rec["algebra"] = a.name;
    rec["n"] = job.n;
    rec["d"] = job.d;
    rec["dim"] = s.dim();
    rec["repeats"] = repeats;
    rec["best_seconds"] = best;
    os << rec.dump() << "\n";
  }
  emit(job.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for doubles of superalgebras and generalized "
               "Schur algebras"};
  app.require_subcommand(1);
  JobSpec job;

  auto add_common = [&](CLI::App* cmd, bool needs_nd) {
    cmd->add_option("--preset", job.preset_name,
                    "algebra preset (see `list-presets`)");
    cmd->add_option("--presentation", job.presentation_file,
                    "presentation JSON file (overrides --preset)");
    if (needs_nd) {
      cmd->add_option("-n", job.n, "matrix size n");
      cmd->add_option("-d", job.d, "tensor degree d");
    }
    cmd->add_option("--ring", job.ring, "scalar ring: z (default), q, fp");
    cmd->add_option("--p", job.p, "prime for --ring fp");
    cmd->add_option("--out", job.out, "output file (atomic write)");
    cmd->add_option("--seed", job.seed, "seed for randomized checks");
    cmd->add_option("--max-d", job.max_d, "configured degree ceiling");
    cmd->add_option("--cache-dir", job.cache_dir,
                    "table cache directory (or SCHURDOUBLE_CACHE_DIR)");
  };

  bool double_pairs = false;
  CLI::App* basis = app.add_subcommand("basis", "enumerate the xi_C basis");
  add_common(basis, true);
  basis->add_flag("--pairs", double_pairs,
                  "enumerate the double pair basis instead");

  CLI::App* constants =
      app.add_subcommand("constants", "build a structure-constant table");
  add_common(constants, true);
  constants->add_option("--mode", job.mode, "formula | oracle | verified");

  CLI::App* dbl = app.add_subcommand(
      "double", "dump double product tables, Gram and phi matrices");
  add_common(dbl, true);

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, true);
  verify->add_option("suite", suite, "suite name or 'all'");

  int repeats = 3;
  CLI::App* bench = app.add_subcommand("bench", "time table builds");
  add_common(bench, true);
  bench->add_option("--repeats", repeats, "repetitions (best time wins)");

  CLI::App* lp = app.add_subcommand("list-presets", "list preset algebras");
  CLI::App* ls = app.add_subcommand("list-suites", "list verification suites");

  CLI11_PARSE(app, argc, argv);

  try {
    validate(job);
    if (lp->parsed()) {
      for (const auto& name : preset_names()) std::cout << name << "\n";
      return 0;
    }
    if (ls->parsed()) {
      for (const auto& name : suite_names()) std::cout << name << "\n";
      return 0;
    }
    if (basis->parsed()) return cmd_basis(job, double_pairs);
    if (constants->parsed()) return cmd_constants(job);
    if (dbl->parsed()) return cmd_double(job);
    if (verify->parsed())
      return cmd_verify(job, suite,
                        verify->count("--preset") > 0 ||
                            verify->count("--presentation") > 0);
    if (bench->parsed()) return cmd_bench(job, repeats);
  } catch (const CheckError& e) {
    nlohmann::json diag;
    diag["error"] = "check";
    diag["what"] = e.what();
    std::cerr << diag.dump() << "\n";
    return 2;
  } catch (const InputError& e) {
    nlohmann::json diag;
    diag["error"] = "input";
    diag["what"] = e.what();
    std::cerr << diag.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json diag;
    diag["error"] = "internal";
    diag["what"] = e.what();
    std::cerr << diag.dump() << "\n";
    return 3;
  }
  return 0;
}
