#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ncplush/calculus.hpp"
#include "ncplush/certify.hpp"
#include "ncplush/decompose.hpp"
#include "ncplush/errors.hpp"
#include "ncplush/json_codec.hpp"
#include "ncplush/minimality.hpp"
#include "ncplush/oracle.hpp"

namespace ncplush::cli {

namespace {

struct Options {
  std::string in;
  std::string out;
  std::string dec;
  std::string point;
  double tol_psd = Tolerances{}.psd;
  double tol_rank = Tolerances{}.rank;
  double tol_verify = Tolerances{}.verify;
  std::uint64_t seed = 0;
  double radius = 0.0;
  int samples = -1;
  int n_max = 3;
  bool auto_reduce = false;
  std::string kind = "plush";
  int a = 2;
  int b = 1;
  int g = 1;
  int d = 3;

  Tolerances tol() const {
    Tolerances t{tol_psd, tol_rank, tol_verify};
    t.validate();
    return t;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << text << '\n';
}

Json tol_json(const Tolerances& t) {
  return Json{{"psd", t.psd}, {"rank", t.rank}, {"verify", t.verify}};
}

// JSON has no infinity; unbounded values are written as null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json witness_json(const Witness& w) {
  return Json{{"X", tuple_to_json(w.X)},
              {"H", tuple_to_json(w.H)},
              {"v", vector_to_json(w.v)},
              {"hess_eig", w.hess_eig},
              {"scale", w.scale},
              {"side", w.star_side ? "ran_Bstar" : "ran_B"},
              {"probe", w.probe},
              {"attempts", w.attempts},
              {"n", w.n}};
}

Json reduction_json(const ReductionResult& red) {
  return Json{{"d_in", red.original_d},
              {"d_out", red.realization.d()},
              {"changed", red.changed},
              {"iterations", red.iterations},
              {"max_residual", red.max_residual},
              {"samples", red.samples}};
}

struct Loaded {
  SymmetricRealization r;
  Json reduction;
};

Loaded load_input(const Options& o, const Tolerances& tol) {
  SymmetricRealization r = load_manifest(read_file(o.in), tol);
  if (!o.auto_reduce) return {std::move(r), Json(nullptr)};
  ReductionResult red = minimal_reduce_with_report(r, tol);
  Json info = reduction_json(red);
  return {std::move(red.realization), std::move(info)};
}

SampleDomain domain(const Options& o, double default_radius, int default_samples) {
  SampleDomain dom;
  dom.n_max = o.n_max;
  dom.radius = o.radius > 0.0 ? o.radius : default_radius;
  dom.n_samples = o.samples >= 0 ? o.samples : default_samples;
  dom.seed = o.seed;
  dom.validate();
  return dom;
}

int emit(std::ostream& out, const Json& report, int code) {
  out << report.dump(2) << '\n';
  return code;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Tolerances tol = o.tol();
  const SymmetricRealization r = load_manifest(read_file(o.in), tol);
  const MatrixTuple x = tuple_from_json(parse_json(read_file(o.point)));
  const DeltaEval info = eval_delta_info(r, x, tol);
  const Matrix value = eval(r, x, tol);
  return emit(out,
              Json{{"command", "eval"},
                   {"n", x.n()},
                   {"value", matrix_to_json(value)},
                   {"pencil_min_singular", info.min_singular},
                   {"pencil_norm", info.pencil_norm},
                   {"tolerances", tol_json(tol)}},
              kExitOk);
}

int cmd_check_minimal(const Options& o, std::ostream& out) {
  const Tolerances tol = o.tol();
  const SymmetricRealization r = load_manifest(read_file(o.in), tol);
  const Subspace span = krylov_span(r, tol);
  const bool minimal = span.dim() == r.d();
  return emit(out,
              Json{{"command", "check-minimal"},
                   {"d", r.d()},
                   {"span_dim", span.dim()},
                   {"minimal", minimal},
                   {"tolerances", tol_json(tol)}},
              minimal ? kExitOk : kExitFalse);
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const Tolerances tol = o.tol();
  const SymmetricRealization r = load_manifest(read_file(o.in), tol);
  const ReductionResult red = minimal_reduce_with_report(r, tol);
  if (!o.out.empty()) write_file(o.out, save_manifest(red.realization));
  Json report = reduction_json(red);
  report["command"] = "reduce";
  report["realization"] = realization_to_json(red.realization);
  report["tolerances"] = tol_json(tol);
  return emit(out, report, kExitOk);
}

int cmd_certify(const Options& o, std::ostream& out, bool convex) {
  const Tolerances tol = o.tol();
  const Loaded in = load_input(o, tol);
  Json report{{"command", convex ? "certify-convex" : "certify-plush"},
              {"reduction", in.reduction},
              {"tolerances", tol_json(tol)}};
  CertificateReport rep;
  if (convex) {
    rep = certify_convex(in.r, tol);
    report["min_eig_QKQ"] = rep.min_eig_sum;
  } else {
    CertifyOptions copts;
    copts.witness_domain = domain(o, 0.1, 0);
    rep = certify_plush(in.r, tol, copts);
    report["min_eig_ran_B"] = rep.min_eig_ran_B;
    report["min_eig_ran_Bstar"] = rep.min_eig_ran_Bstar;
    report["witness"] = rep.witness ? witness_json(*rep.witness) : Json(nullptr);
    report["seed"] = o.seed;
  }
  report["verdict"] = to_string(rep.verdict);
  report["minimal"] = rep.minimal;
  return emit(out, report, rep.verdict == Verdict::CertifiedTrue ? kExitOk : kExitFalse);
}

int cmd_radius(const Options& o, std::ostream& out) {
  const Tolerances tol = o.tol();
  const Loaded in = load_input(o, tol);
  const double eps = plush_radius(in.r, tol);
  return emit(out,
              Json{{"command", "radius"},
                   {"radius", finite_or_null(eps)},
                   {"unbounded", !std::isfinite(eps)},
                   {"reduction", in.reduction},
                   {"tolerances", tol_json(tol)}},
              kExitOk);
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const Tolerances tol = o.tol();
  const Loaded in = load_input(o, tol);
  const DecompositionResult res = decompose(in.r, tol);
  const Json dec = decomposition_to_json(res);
  if (!o.out.empty()) write_file(o.out, dec.dump(2));
  Json report{{"command", "decompose"},
              {"a", res.a},
              {"b", res.b},
              {"h", res.q.h},
              {"k", res.q.g_active},
              {"s", res.s},
              {"t", res.t},
              {"trivial", res.trivial},
              {"f_dim", res.f.d()},
              {"reduction", in.reduction},
              {"tolerances", tol_json(tol)}};
  if (o.out.empty()) report["decomposition"] = dec;
  return emit(out, report, kExitOk);
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerances tol = o.tol();
  const Loaded in = load_input(o, tol);
  const DecompositionResult res = decomposition_from_json(parse_json(read_file(o.dec)), tol);
  VerifyOptions vopts;
  vopts.n_samples = o.samples >= 0 ? o.samples : 50;
  vopts.n_max = o.n_max;
  vopts.radius = o.radius;
  vopts.seed = o.seed;
  const VerifyReport rep = verify_decomposition(in.r, res, vopts, tol);
  Json report{{"command", "verify"},
              {"samples", rep.samples},
              {"n_max", vopts.n_max},
              {"radius", rep.radius},
              {"seed", vopts.seed},
              {"max_residual", rep.max_residual},
              {"worst_sample", rep.worst_sample},
              {"psi_residual", rep.psi_residual},
              {"pb_residual_a", rep.pb_residual_a},
              {"pb_residual_b", rep.pb_residual_b},
              {"closure_residual", rep.closure_residual},
              {"pencil_residual", rep.pencil_residual},
              {"extension_residual", rep.extension_residual},
              {"f_convex", rep.f_convex},
              {"f_min_eig", rep.f_min_eig},
              {"h_bound", rep.h_bound},
              {"passed", rep.passed},
              {"reduction", in.reduction},
              {"tolerances", tol_json(tol)}};
  if (rep.passed) return emit(out, report, kExitOk);
  report["worst_x"] = rep.worst_sample >= 0 ? tuple_to_json(rep.worst_x) : Json(nullptr);
  const std::string msg = "decomposition failed verification (max residual " +
                          std::to_string(rep.max_residual) + ")";
  report["error"] = Json{{"kind", to_string(ErrorKind::VerificationFailed)}, {"message", msg}};
  err << "ncplush: VerificationFailed: " << msg << '\n';
  return emit(out, report, kExitError);
}

int cmd_sample(const Options& o, std::ostream& out) {
  const Tolerances tol = o.tol();
  const Loaded in = load_input(o, tol);
  const SampleDomain dom = domain(o, 0.1, 100);
  const SampleReport rep = sample_hessian(in.r, dom, tol);
  Json report{{"command", "sample"},
              {"samples", rep.samples},
              {"probes", rep.probes},
              {"min_eig", rep.min_eig},
              {"min_relative", rep.min_relative},
              {"argmin", rep.argmin},
              {"radius", dom.radius},
              {"n_max", dom.n_max},
              {"seed", dom.seed},
              {"reduction", in.reduction},
              {"tolerances", tol_json(tol)}};
  if (rep.argmin >= 0) {
    report["argmin_X"] = tuple_to_json(rep.argmin_x);
    report["argmin_H"] = tuple_to_json(rep.argmin_h);
  }
  return emit(out, report, kExitOk);
}

int cmd_witness(const Options& o, std::ostream& out) {
  const Tolerances tol = o.tol();
  const Loaded in = load_input(o, tol);
  const SampleDomain dom = domain(o, 0.1, 0);
  const std::optional<Witness> w = find_witness(in.r, dom, tol);
  return emit(out,
              Json{{"command", "witness"},
                   {"witness", w ? witness_json(*w) : Json(nullptr)},
                   {"radius", dom.radius},
                   {"seed", dom.seed},
                   {"reduction", in.reduction},
                   {"tolerances", tol_json(tol)}},
              w ? kExitFalse : kExitOk);
}

int cmd_gen(const Options& o, std::ostream& out) {
  SymmetricRealization r = o.kind == "plush" ? gen_plush(o.a, o.b, o.g, o.seed)
                                             : gen_random(o.d, o.g, o.seed);
  const std::string text = save_manifest(r);
  if (!o.out.empty()) {
    write_file(o.out, text);
    return emit(out,
                Json{{"command", "gen"}, {"kind", o.kind}, {"seed", o.seed}, {"d", r.d()},
                     {"g", r.g()}, {"out", o.out}},
                kExitOk);
  }
  out << text << '\n';
  return kExitOk;
}

int fail(std::ostream& out, std::ostream& err, std::string_view kind, const std::string& msg) {
  err << "ncplush: " << kind << ": " << msg << '\n';
  return emit(out, Json{{"error", Json{{"kind", kind}, {"message", msg}}}}, kExitError);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric nc rational functions: plush and convex certificates, witnesses, r = f o q"};
  app.name("ncplush");
  app.require_subcommand(1, 1);
  Options o;

  auto tolerances = [&](CLI::App* sub) {
    sub->add_option("--tol-psd", o.tol_psd, "relative PSD slack")->capture_default_str();
    sub->add_option("--tol-rank", o.tol_rank, "relative singular value cutoff")->capture_default_str();
    sub->add_option("--tol-verify", o.tol_verify, "relative identity residual bound")
        ->capture_default_str();
  };
  auto input = [&](CLI::App* sub) {
    sub->add_option("--in", o.in, "realization manifest (JSON)")->required();
    tolerances(sub);
  };
  auto reducible = [&](CLI::App* sub) {
    sub->add_flag("--auto-reduce", o.auto_reduce, "run minimal_reduce on the input first");
  };
  auto sampling = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    sub->add_option("--radius", o.radius, "column-ball radius");
    sub->add_option("--samples", o.samples, "number of random samples");
    sub->add_option("--n-max", o.n_max, "largest matrix size sampled")->capture_default_str();
  };

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate r at a matrix tuple");
  input(c_eval);
  c_eval->add_option("--point", o.point, "tuple file {\"X\": [...]}")->required();

  CLI::App* c_min = app.add_subcommand("check-minimal", "test the Krylov span criterion");
  input(c_min);

  CLI::App* c_reduce = app.add_subcommand("reduce", "compute a minimal realization");
  input(c_reduce);
  c_reduce->add_option("--out", o.out, "write the reduced manifest here");

  CLI::App* c_plush = app.add_subcommand("certify-plush", "PKP and P_*KP_* certificate");
  input(c_plush);
  reducible(c_plush);
  sampling(c_plush);

  CLI::App* c_convex = app.add_subcommand("certify-convex", "QKQ certificate");
  input(c_convex);
  reducible(c_convex);

  CLI::App* c_radius = app.add_subcommand("radius", "certified plush ball radius");
  input(c_radius);
  reducible(c_radius);

  CLI::App* c_dec = app.add_subcommand("decompose", "construct r = f o q");
  input(c_dec);
  reducible(c_dec);
  c_dec->add_option("--out", o.out, "write the decomposition here");

  CLI::App* c_verify = app.add_subcommand("verify", "check a decomposition against r");
  input(c_verify);
  reducible(c_verify);
  sampling(c_verify);
  c_verify->add_option("--dec", o.dec, "decomposition file")->required();

  CLI::App* c_sample = app.add_subcommand("sample", "sample complex Hessians on a ball");
  input(c_sample);
  reducible(c_sample);
  sampling(c_sample);

  CLI::App* c_witness = app.add_subcommand("witness", "search for a non-plush witness");
  input(c_witness);
  reducible(c_witness);
  sampling(c_witness);

  CLI::App* c_gen = app.add_subcommand("gen", "generate a fixture manifest");
  c_gen->add_option("--kind", o.kind, "plush or random")
      ->check(CLI::IsMember({"plush", "random"}))
      ->capture_default_str();
  c_gen->add_option("--a", o.a, "positive signature count (plush)")->capture_default_str();
  c_gen->add_option("--b", o.b, "negative signature count (plush)")->capture_default_str();
  c_gen->add_option("--d", o.d, "state size (random)")->capture_default_str();
  c_gen->add_option("--g", o.g, "variable count")->capture_default_str();
  c_gen->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  c_gen->add_option("--out", o.out, "write the manifest here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*c_eval) return cmd_eval(o, out);
    if (*c_min) return cmd_check_minimal(o, out);
    if (*c_reduce) return cmd_reduce(o, out);
    if (*c_plush) return cmd_certify(o, out, false);
    if (*c_convex) return cmd_certify(o, out, true);
    if (*c_radius) return cmd_radius(o, out);
    if (*c_dec) return cmd_decompose(o, out);
    if (*c_verify) return cmd_verify(o, out, err);
    if (*c_sample) return cmd_sample(o, out);
    if (*c_witness) return cmd_witness(o, out);
    if (*c_gen) return cmd_gen(o, out);
  } catch (const Error& e) {
    const std::string what = e.what();
    const std::string_view kind = to_string(e.kind());
    // Messages carry a "Kind: " prefix; strip it for the JSON field.
    const std::string prefix = std::string(kind) + ": ";
    return fail(out, err, kind, what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what);
  } catch (const std::exception& e) {
    return fail(out, err, "Internal", e.what());
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace ncplush::cli
