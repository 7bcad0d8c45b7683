// command-line driver: curve construction, dualization, censuses, and the
// two verification statements, with JSON on stdout or --out. Exit codes:
// 0 all requested assertions pass, 1 assertion failure (itemized JSON),
// 2 malformed input.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>

#include "cdual/jsonio.hpp"

using namespace cdual;
using io::json;

namespace {

json timestamp_json(double elapsed_s) {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return json{{"iso", buf}, {"elapsed_seconds", elapsed_s}};
}

double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

int emit(const json& j, const std::string& out_path, int code) {
  if (out_path.empty())
    std::cout << io::canonical_dump(j);
  else
    io::write_json_file(out_path, j);
  return code;
}

uint32_t char_of(uint32_t q) {
  for (uint32_t f = 2;; ++f)
    if (q % f == 0) return f;
}

bool prime_power(uint32_t q) {
  if (q < 2) return false;
  uint32_t p = char_of(q);
  while (q % p == 0) q /= p;
  return q == 1;
}

// default extension degree for generic-member trials; the environment
// variable CDUAL_EXT_K overrides it
uint32_t default_ext_k() {
  if (const char* e = std::getenv("CDUAL_EXT_K")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 20) return uint32_t(v);
  }
  return 8;
}

struct Args {
  std::string in, out;
  uint64_t seed = 1;
  uint32_t q = 2;
  uint32_t trials = 1;
  uint32_t ext_k = default_ext_k();
  uint32_t jobs = 1;
};

int run_fermat(const Args& a) {
  uint32_t p = char_of(a.q);
  auto F = gf::Field::make(p, 1, a.seed);
  auto C = curves::fermat_curve(a.q, F);
  auto D = dual::fermat_dual_closed_form(a.q, F);
  json j{{"schema", 1},
         {"curve", io::curve_to_json(C)},
         {"dual", io::dual_to_json(D)}};
  return emit(j, a.out, 0);
}

// Accept either a bare curve document or a bundle (as written by `fermat`)
// whose curve sits under the "curve" key.
curves::Curve load_curve(const Args& a) {
  json j = io::read_json_file(a.in);
  if (j.is_object() && j.contains("curve") && !j.contains("p")) j = j["curve"];
  return io::curve_from_json(j, a.seed);
}

int run_dual(const Args& a) {
  auto C = load_curve(a);
  double t0 = now_s();
  json j{{"schema", 1}};
  int code = 0;
  try {
    auto D = dual::dual_curve_interpolate(C, dual::expected_dual_degree(C.q),
                                          mix_seed(a.seed, 0xd));
    bool ok = dual::verify_dual(C, D, mix_seed(a.seed, 0x7)).all_ok();
    j["dual"] = io::dual_to_json(D);
    j["verified"] = ok;
    code = ok ? 0 : 1;
  } catch (const gf::FieldError& e) {
    j["error"] = e.what();
    code = 1;
  }
  j["timestamp"] = timestamp_json(now_s() - t0);
  return emit(j, a.out, code);
}

int run_census(const Args& a) {
  auto C = load_curve(a);
  double t0 = now_s();
  json j{{"schema", 1}};
  int code = 0;
  try {
    auto D = dual::dual_curve_interpolate(C, dual::expected_dual_degree(C.q),
                                          mix_seed(a.seed, 0xd));
    if (!dual::verify_dual(C, D, mix_seed(a.seed, 0x7)).all_ok())
      throw gf::FieldError("dual verification failed");
    auto cen = census::singularity_census(D, C);
    j = io::sing_census_to_json(cen, D.degree);
    code = cen.unknown_count == 0 ? 0 : 1;
  } catch (const gf::FieldError& e) {
    j["error"] = e.what();
    code = 1;
  }
  j["timestamp"] = timestamp_json(now_s() - t0);
  return emit(j, a.out, code);
}

int run_flexes(const Args& a) {
  auto C = load_curve(a);
  double t0 = now_s();
  json j{{"schema", 1}};
  int code = 0;
  try {
    auto fx = census::flex_census(C);
    j = io::flex_census_to_json(fx);
  } catch (const gf::FieldError& e) {
    j["error"] = e.what();
    code = 1;
  }
  j["timestamp"] = timestamp_json(now_s() - t0);
  return emit(j, a.out, code);
}

int run_theorem1(const Args& a) {
  double t0 = now_s();
  auto reps = census::verify_theorem1(a.q, a.seed, a.trials, a.ext_k);
  bool pass = true;
  json trials = json::array();
  for (auto& r : reps) {
    pass = pass && r.pass;
    trials.push_back(io::report_to_json(r));
  }
  json j{{"schema", 1},
         {"statement", "generic-member"},
         {"q", a.q},
         {"seed", a.seed},
         {"trials", trials},
         {"pass", pass},
         {"timestamp", timestamp_json(now_s() - t0)}};
  return emit(j, a.out, pass ? 0 : 1);
}

int run_theorem2(const Args& a) {
  double t0 = now_s();
  auto rep = census::verify_theorem2(a.q);
  // the Milnor number shared by all deep singular points, when uniform
  json milnor = nullptr;
  bool uniform = !rep.specials.empty();
  for (auto& r : rep.specials)
    if (!r.mu || (rep.specials[0].mu && *r.mu != *rep.specials[0].mu))
      uniform = false;
  if (uniform && rep.specials[0].mu) milnor = *rep.specials[0].mu;
  json j{{"schema", 1},
         {"statement", "invariant-member"},
         {"q", a.q},
         {"nodes", rep.node_count},
         {"specials", rep.special_count},
         {"milnor", milnor},
         {"report", io::report_to_json(rep)},
         {"pass", rep.pass},
         {"timestamp", timestamp_json(now_s() - t0)}};
  return emit(j, a.out, rep.pass ? 0 : 1);
}

int run_bh(const Args& a) {
  uint32_t p = char_of(a.q);
  auto F = gf::Field::make(p, 1, a.seed);
  double t0 = now_s();
  poly::MPoly hb = curves::ballico_hefez(a.q, F);
  std::vector<poly::MPoly> gens = {hb};
  for (uint32_t i = 0; i < 3; ++i) {
    poly::MPoly pd = poly::partial_derivative(hb, i);
    if (!pd.is_zero()) gens.push_back(std::move(pd));
  }
  auto L = ideals::projective_zeros(gens);
  auto certs = solve::make_node_certificates(hb);
  bool all_nodes = true;
  json points = json::array();
  for (auto& cls : L.classes) {
    uint32_t s = solve::stratum_of(cls.rep);
    poly::MPoly Ne = poly::map_coefficients(cls.emb, certs.N[s]);
    bool node = !cls.ext->is_zero(poly::mp_eval(Ne, cls.rep));
    all_nodes = all_nodes && node;
    points.push_back(json{{"stratum", s},
                          {"points", cls.residue_degree},
                          {"node", node}});
  }
  uint64_t want = uint64_t(a.q) * (a.q - 1) / 2;
  bool pass = all_nodes && L.point_count() == want;
  json j{{"schema", 1},
         {"q", a.q},
         {"H", poly::mp_to_string(hb)},
         {"node_count", L.point_count()},
         {"expected_node_count", want},
         {"points", points},
         {"pass", pass},
         {"timestamp", timestamp_json(now_s() - t0)}};
  return emit(j, a.out, pass ? 0 : 1);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact duals and singularity censuses for the q-power tensor family"};
  app.require_subcommand(1);
  Args a;

  auto check_q = CLI::Validator(
      [](std::string& s) -> std::string {
        uint32_t v = uint32_t(std::strtoul(s.c_str(), nullptr, 10));
        return prime_power(v) ? "" : "q must be a prime power >= 2";
      },
      "PRIMEPOWER");

  auto* fermat = app.add_subcommand("fermat", "emit the invariant member and its closed-form dual");
  fermat->add_option("--q", a.q, "prime power")->required()->check(check_q);
  fermat->add_option("--seed", a.seed, "field construction seed");
  fermat->add_option("--out", a.out, "output path (default stdout)");

  auto* dualc = app.add_subcommand("dual", "interpolate and verify the dual of a stored member");
  dualc->add_option("--in", a.in, "curve JSON")->required();
  dualc->add_option("--seed", a.seed, "sampling seed");
  dualc->add_option("--out", a.out, "output path (default stdout)");

  auto* cen = app.add_subcommand("census", "singularity census of a stored member's dual");
  cen->add_option("--in", a.in, "curve JSON")->required();
  cen->add_option("--seed", a.seed, "sampling seed");
  cen->add_option("--out", a.out, "output path (default stdout)");
  cen->add_option("--jobs", a.jobs, "bound on parallel fan-out (runs serially)")
      ->check(CLI::PositiveNumber);

  auto* flx = app.add_subcommand("flexes", "tangency census of a stored member");
  flx->add_option("--in", a.in, "curve JSON")->required();
  flx->add_option("--seed", a.seed, "sampling seed");
  flx->add_option("--out", a.out, "output path (default stdout)");
  flx->add_option("--jobs", a.jobs, "bound on parallel fan-out (runs serially)")
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "check a theorem statement");
  verify->require_subcommand(1);
  auto* th1 = verify->add_subcommand("theorem1", "generic members: degree, nodes, flexes, genus");
  th1->add_option("--q", a.q, "prime power")->required()->check(check_q);
  th1->add_option("--trials", a.trials, "independent random members")
      ->check(CLI::PositiveNumber);
  th1->add_option("--seed", a.seed, "master seed");
  th1->add_option("--ext-k", a.ext_k, "field extension degree for members (env CDUAL_EXT_K)")
      ->check(CLI::Range(1, 20));
  th1->add_option("--jobs", a.jobs, "bound on parallel fan-out (runs serially)")
      ->check(CLI::PositiveNumber);
  th1->add_option("--out", a.out, "output path (default stdout)");
  auto* th2 = verify->add_subcommand("theorem2", "invariant member: dual equality and census");
  th2->add_option("--q", a.q, "prime power")->required()->check(check_q);
  th2->add_option("--out", a.out, "output path (default stdout)");

  auto* bh = app.add_subcommand("bh", "image-curve polynomial and its nodal census");
  bh->add_option("--q", a.q, "prime power")->required()->check(check_q);
  bh->add_option("--seed", a.seed, "field construction seed");
  bh->add_option("--out", a.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2; // malformed command line
  }

  try {
    if (fermat->parsed()) return run_fermat(a);
    if (dualc->parsed()) return run_dual(a);
    if (cen->parsed()) return run_census(a);
    if (flx->parsed()) return run_flexes(a);
    if (verify->parsed()) {
      if (th1->parsed()) return run_theorem1(a);
      if (th2->parsed()) return run_theorem2(a);
    }
    if (bh->parsed()) return run_bh(a);
  } catch (const io::SchemaError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const io::InvalidModulus& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << io::canonical_dump(json{{"error", e.what()}, {"pass", false}});
    return 1;
  }
  return 2;
}
