// heightcert: canonical-height lower-bound toolkit for elliptic curves over
// small abelian number fields.  Subcommands expose the places/heights layer
// (weil, delta), Frobenius data (frobpoly), canonical heights (canonical),
// prime selection (good-prime), the inertia congruence check (adcheck), and
// the proof-chain certifier (certify, verify).
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sys/stat.h>

#include "heightcert/certifier.hpp"
#include "heightcert/io.hpp"

using namespace hc;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool file_exists(const std::string& path) {
  struct stat st;
  return stat(path.c_str(), &st) == 0;
}

struct InputOpts {
  std::string field;              // literal name or stanza file
  std::vector<std::string> curve; // stanza files
  std::string point;              // "O", inline "x=... y=...", or stanza file
  std::string point2;             // second point for delta
};

void add_input_opts(CLI::App* cmd, InputOpts& in, bool need_point = true) {
  cmd->add_option("--field", in.field,
                  "Field: literal name (Q, Q(sqrt d), Q(zeta m)) or stanza file");
  cmd->add_option("--curve", in.curve, "Curve stanza file(s)");
  if (need_point)
    cmd->add_option("--point", in.point,
                    "Point: O, inline 'x=... y=...', or stanza file");
}

ParsedInput resolve_inputs(const InputOpts& in) {
  ParsedInput merged;
  merged.field = make_rationals();
  std::string text;
  for (const auto& path : in.curve) text += read_file(path);
  ParsedInput base = parse_input_text(text, in.curve.empty() ? "<none>" : in.curve[0]);
  merged = base;
  if (!in.field.empty()) {
    if (file_exists(in.field)) {
      ParsedInput f = parse_input_text(read_file(in.field), in.field);
      merged.field = f.field;
    } else {
      merged.field = parse_field_name(in.field);
    }
  }
  auto add_point = [&](const std::string& spec) {
    if (spec.empty()) return;
    if (spec == "O") {
      merged.points.push_back(ec_infinity(merged.field));
      return;
    }
    std::string ptext = file_exists(spec) ? read_file(spec) : "point " + spec + "\n";
    // Point stanzas need the field/curve in scope: prepend them.
    std::string full;
    full += "field " + merged.field->name() + "\n";
    if (merged.curve) {
      const EllipticCurve& E = *merged.curve;
      full += "curve a1=" + fe_str(E.a1) + " a2=" + fe_str(E.a2) + " a3=" +
              fe_str(E.a3) + " a4=" + fe_str(E.a4) + " a6=" + fe_str(E.a6);
      if (E.cm) full += " cm_discriminant=" + std::to_string(E.cm_disc);
      full += "\n";
    }
    full += ptext;
    ParsedInput got = parse_input_text(full, file_exists(spec) ? spec : "<inline>");
    for (auto& P : got.points) merged.points.push_back(std::move(P));
  };
  add_point(in.point);
  add_point(in.point2);
  return merged;
}

const EllipticCurve& need_curve(const ParsedInput& in) {
  if (!in.curve) throw hypothesis_error("no curve given (use --curve)");
  return *in.curve;
}

const ECPoint& need_point(const ParsedInput& in, size_t idx = 0) {
  if (in.points.size() <= idx)
    throw hypothesis_error("missing point input (use --point)");
  return in.points[idx];
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

int exit_code_for(const BoundCertificate& cert) {
  if (cert.verdict == "refuted-step") return 5;
  if (cert.verdict == "hypothesis-violated") return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonical-height lower-bound toolkit (genus 1)"};
  app.require_subcommand(1);

  InputOpts in;
  std::string mode_s = "diagnostic";
  double tol = 1e-4;
  long max_doublings = 30;
  long p_opt = 0;
  long prime_budget = 100000;
  long prime_start = 2;
  std::string out_path;
  std::string alpha_s;
  std::string cert_path;
  std::string norm_s = "psi";

  auto* weil = app.add_subcommand("weil", "Weil height h(psi P) of stanza points");
  add_input_opts(weil, in);
  weil->add_option("--out", out_path, "Output file (default stdout)");

  auto* delta = app.add_subcommand(
      "delta", "Exact v-adic distance of two points at the places above p");
  add_input_opts(delta, in);
  delta->add_option("--point2", in.point2, "Second point")->required();
  delta->add_option("--p", p_opt, "Rational prime")->required();
  delta->add_option("--out", out_path, "Output file (default stdout)");

  auto* frob = app.add_subcommand("frobpoly",
                                  "Frobenius characteristic polynomial at p");
  add_input_opts(frob, in, false);
  frob->add_option("--p", p_opt, "Rational prime")->required();
  frob->add_option("--out", out_path, "Output file (default stdout)");

  auto* canon = app.add_subcommand("canonical", "Canonical height hhat_psi(P)");
  add_input_opts(canon, in);
  canon->add_option("--tol", tol, "Tolerance (rigorous radius)");
  canon->add_option("--max-doublings", max_doublings, "Doubling budget");
  canon->add_option("--norm", norm_s, "Normalization: psi (default) or x");
  canon->add_option("--out", out_path, "Output file (default stdout)");

  auto* goodp = app.add_subcommand("good-prime", "Select a good certification prime");
  add_input_opts(goodp, in, false);
  goodp->add_option("--mode", mode_s, "theorem|diagnostic");
  goodp->add_option("--start", prime_start, "Search start");
  goodp->add_option("--prime-budget", prime_budget, "Search bound");
  goodp->add_option("--out", out_path, "Output file (default stdout)");

  auto* adc = app.add_subcommand(
      "adcheck", "Inertia congruence v(tau(a)^p - a^p) >= e above p");
  adc->add_option("--field", in.field, "Field name or stanza file")->required();
  adc->add_option("--alpha", alpha_s, "Integral element expression")->required();
  adc->add_option("--p", p_opt, "Ramified rational prime")->required();
  adc->add_option("--out", out_path, "Output file (default stdout)");

  auto* cert = app.add_subcommand("certify",
                                  "Certify a canonical-height lower bound");
  add_input_opts(cert, in);
  cert->add_option("--p", p_opt, "Prime (default: selected automatically)");
  cert->add_option("--mode", mode_s, "theorem|diagnostic");
  cert->add_option("--tol", tol, "Canonical-height tolerance");
  cert->add_option("--prime-budget", prime_budget, "Prime search bound");
  cert->add_option("--out", out_path, "Certificate output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "Re-check a serialized certificate");
  ver->add_option("certificate", cert_path, "Certificate JSON file")->required();
  ver->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (weil->parsed()) {
      ParsedInput inputs = resolve_inputs(in);
      std::string report;
      for (size_t i = 0; i < inputs.points.size(); ++i) {
        RealInterval h = weil_height(psi_embed(inputs.points[i]), 192);
        report += "point " + std::to_string(i + 1) + ": h(psi P) = " +
                  fmt(h.mid_d()) + " +/- " + fmt(h.width_d() / 2) + "\n";
      }
      if (inputs.points.empty())
        throw hypothesis_error("weil: no points given");
      emit(out_path, report);
    } else if (delta->parsed()) {
      ParsedInput inputs = resolve_inputs(in);
      const ECPoint& P = need_point(inputs, 0);
      const ECPoint& Q = need_point(inputs, 1);
      std::string report;
      for (const auto& v : places_above(inputs.field, p_opt)) {
        auto coeff = delta_v_finite_coeff(psi_embed(P), psi_embed(Q), v);
        report += "prime #" + std::to_string(v.prime->index) + " above " +
                  std::to_string(p_opt) + ": delta = " +
                  (coeff ? "(" + coeff->get_str() + ") * log " +
                               std::to_string(p_opt)
                         : std::string("+infinity")) +
                  "\n";
      }
      emit(out_path, report);
    } else if (frob->parsed()) {
      ParsedInput inputs = resolve_inputs(in);
      FrobeniusData fd = frobenius_poly(need_curve(inputs), p_opt);
      std::string mid;
      if (fd.a_p > 0)
        mid = " - " + std::to_string(fd.a_p) + "X";
      else if (fd.a_p < 0)
        mid = " + " + std::to_string(-fd.a_p) + "X";
      emit(out_path, "X^2" + mid + " + " + std::to_string(fd.p) + "\n");
    } else if (canon->parsed()) {
      ParsedInput inputs = resolve_inputs(in);
      const EllipticCurve& E = need_curve(inputs);
      HeightNorm norm = norm_s == "x" ? HeightNorm::XMap : HeightNorm::PsiMap;
      std::string report;
      for (size_t i = 0; i < inputs.points.size(); ++i) {
        CanonicalHeightResult r = canonical_height(E, inputs.points[i], norm,
                                                   tol, 192, max_doublings);
        report += "point " + std::to_string(i + 1) + ": hhat = ";
        if (r.torsion_zero)
          report += "0 (exact; torsion)\n";
        else
          report += fmt(r.value) + " +/- " + fmt(r.error) + " (" +
                    std::to_string(r.steps) + " doublings)\n";
      }
      if (inputs.points.empty())
        throw hypothesis_error("canonical: no points given");
      emit(out_path, report);
    } else if (goodp->parsed()) {
      ParsedInput inputs = resolve_inputs(in);
      const EllipticCurve& E = need_curve(inputs);
      CertMode mode = mode_s == "theorem" ? CertMode::Theorem : CertMode::Diagnostic;
      double threshold = 0.0;
      if (mode == CertMode::Theorem)
        threshold = std::exp(height_comparison_bound(E).bconst.hi_d() + 1.0);
      GoodPrimeReport rep = select_good_prime(E, inputs.field, mode,
                                              prime_start, threshold,
                                              prime_budget);
      std::string report = "p = " + std::to_string(rep.p) + " (" +
                           (rep.used_cm_route
                                ? std::string("CM + ordinary route")
                                : "E(L)[p] = 0 via " + rep.torsion_method) +
                           ")\n";
      emit(out_path, report);
    } else if (adc->parsed()) {
      FieldRef K = file_exists(in.field)
                       ? parse_input_text(read_file(in.field), in.field).field
                       : parse_field_name(in.field);
      FieldElement alpha = parse_element(K, alpha_s);
      AdCongruence r = ad_congruence_check(alpha, p_opt);
      std::string report =
          "v(tau(alpha)^p - alpha^p) = " +
          (r.observed == VAL_INFINITY ? std::string("+infinity")
                                      : std::to_string(r.observed)) +
          ", required >= " + std::to_string(r.e) + ": " +
          (r.holds ? "holds" : "FAILS") + "\n";
      emit(out_path, report);
      return r.holds ? 0 : 5;
    } else if (cert->parsed()) {
      ParsedInput inputs = resolve_inputs(in);
      const EllipticCurve& E = need_curve(inputs);
      const ECPoint& P = need_point(inputs);
      CertConfig cfg;
      cfg.mode = mode_s == "theorem" ? CertMode::Theorem : CertMode::Diagnostic;
      cfg.tolerance = tol;
      cfg.prime = p_opt;
      cfg.prime_start = prime_start;
      cfg.prime_budget = prime_budget;
      BoundCertificate c = certify(E, inputs.field, P, cfg);
      emit(out_path, certificate_to_json(c));
      std::cerr << "verdict: " << c.verdict;
      if (c.verdict == "certified")
        std::cerr << "; hhat(P) >= " << fmt(c.claimed_lower);
      std::cerr << "\n";
      return exit_code_for(c);
    } else if (ver->parsed()) {
      BoundCertificate c = certificate_from_json(read_file(cert_path));
      VerifyResult r = verify_certificate(c);
      emit(out_path, (r.ok ? "verified: " : "MISMATCH: ") + r.message + "\n");
      return r.ok ? 0 : 5;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (int)e.kind();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 6;
  }
  return 0;
}
