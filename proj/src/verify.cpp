#include "ordscan/verify.hpp"

#include <cmath>
#include <sstream>

#include "ordscan/densities.hpp"
#include "ordscan/galdiag.hpp"
#include "ordscan/gsp_asym.hpp"
#include "ordscan/redscan.hpp"
#include "ordscan/somos.hpp"

namespace ordscan {

namespace {

GroupSpec named(SpecKind k, u64 ell, unsigned g = 2) {
  GroupSpec s;
  s.kind = k;
  s.ell = ell;
  s.gsp_g = g;
  return s;
}

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

void push(std::vector<CheckResult>& out, const std::string& id, bool pass,
          const std::string& detail) {
  out.push_back({id, detail, pass});
}

void criterion1(std::vector<CheckResult>& out) {
  push(out, "1.gl2-density-ell2", gl2_density(2) == make_rat(11, 21), "gl2(2) = 11/21");
  push(out, "1.gl2-density-ell5", gl2_density(5) == make_rat(2381, 2976), "gl2(5) = 2381/2976");
  push(out, "1.gm-density-ell2", gm_density(2) == make_rat(1, 3), "gm(2) = 1/3");
  push(out, "1.cm-split-norm-ell2",
       cm_density(2, CartanShape::Split, CartanScope::Normalizer) == make_rat(2, 9),
       "cm(2, split, normalizer) = 2/9");
  push(out, "1.cm-inert-norm-ell2",
       cm_density(2, CartanShape::Inert, CartanScope::Normalizer) == make_rat(8, 15),
       "cm(2, inert, normalizer) = 8/15");
  push(out, "1.cm-split-norm-ell5",
       cm_density(5, CartanShape::Split, CartanScope::Normalizer) == make_rat(817, 1152),
       "cm(5, split, normalizer) = 817/1152");
}

void criterion2(std::vector<CheckResult>& out) {
  Rat target = make_rat(11, 21);
  Rat lo(0), hi(1);
  bool nested = true, contains = true, widths = true;
  DensityInterval first;
  for (unsigned n = 1; n <= 3; ++n) {
    auto d = density_level(named(SpecKind::GL2Full, 2), n);
    if (n == 1) first = d;
    nested = nested && d.lower >= lo && d.upper <= hi;
    contains = contains && d.lower <= target && target <= d.upper;
    widths = widths && Rat(d.upper - d.lower) <= make_rat(1, (long)(1u << n));
    lo = d.lower;
    hi = d.upper;
  }
  push(out, "2.gl2-intervals-nested", nested, "levels 1..3 nested");
  push(out, "2.gl2-intervals-contain-11/21", contains, "all contain 11/21");
  push(out, "2.gl2-interval-widths", widths, "width <= 2^-n");
  push(out, "2.gl2-level1-exact", first.lower == make_rat(1, 3) && first.upper == make_rat(5, 8),
       "level 1 = [1/3, 5/8] (96-element affine oracle)");
}

void criterion3(std::vector<CheckResult>& out) {
  bool cn_ok = true;
  for (u64 ell : {2ull, 3ull}) {
    for (unsigned n : {1u, 2u}) {
      auto elems = enumerate_group(named(SpecKind::GL2Full, ell), n);
      ResidueMatrix id = ResidueMatrix::identity(2, ell, n);
      Int count = 0;
      for (const auto& M : elems) {
        u64 det = mat_det(mat_sub(M, id));
        if (det != 0 && (unsigned)ord_ell_u64(det, ell).v == n - 1) ++count;
      }
      cn_ok = cn_ok && (count == gl2_cn(ell, n));
    }
  }
  push(out, "3.cn-vs-enumeration", cn_ok, "c_n matches GL2 enumeration, (l,n) in {2,3}x{1,2}");
  bool pc_ok = true;
  for (u64 ell : {2ull, 3ull, 5ull})
    for (unsigned n : {2u, 3u}) {
      u64 modn = 1;
      for (unsigned i = 0; i < n; ++i) modn *= ell;
      for (u64 a = 0; a < ell && pc_ok; ++a)
        for (u64 b = 0; b < ell && pc_ok; ++b)
          for (u64 c = 0; c < modn && pc_ok; ++c) {
            u64 brute = 0;
            for (u64 al = a; al < modn; al += ell)
              for (u64 be = b; be < modn; be += ell)
                if (mulmod(al, be, modn) == c) ++brute;
            pc_ok = pair_count(a, b, c, ell, n) == (long)brute;
          }
    }
  push(out, "3.pair-count-exhaustive", pc_ok, "pair counts match brute force, l in {2,3,5}");
}

void criterion4(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  auto d1 = density_level(named(SpecKind::GSp, 2), 1);
  push(out, "4.gsp4-level1-lower", d1.lower == gsp4_bounds(2).lower,
       "enumeration lower bound = closed-form lower bound = 19/45");
  for (u64 ell : {2ull, 3ull}) {
    unsigned n = ell == 2 ? 4 : 2;
    auto table = gsp4_table_interval(ell).value();
    auto mc = density_mc(named(SpecKind::GSp, ell), n, opt.mc_samples, opt.mc_seed, opt.workers);
    bool hw_ok = mc.half_width_99 < 0.002;
    // the estimand is the level-n capped mean, which meets the table's upper
    // endpoint; containment is asserted up to the computed confidence width
    bool inside = mc.mean >= table.lower.get_d() - mc.half_width_99 &&
                  mc.mean <= table.upper.get_d() + mc.half_width_99;
    std::ostringstream os;
    os << "ell=" << ell << " n=" << n << " mean=" << mc.mean << " hw=" << mc.half_width_99
       << " table=[" << rat_str(table.lower) << ", " << rat_str(table.upper) << "]";
    push(out, "4.gsp4-mc-ell" + std::to_string(ell), hw_ok && inside, os.str());
  }
}

void criterion5(std::vector<CheckResult>& out) {
  auto b3 = brute_slice_coeffs(1, true, 3).value();
  push(out, "5.sl2f3-counts", b3.a == make_rat(3, 8) && b3.b == make_rat(5, 8),
       "a1 = 3/8, b1 = 5/8 by exhaustive SL2(F_3) counts");
  bool conv_ok = true;
  bool disc_found = false;
  for (u64 ell : {2ull, 3ull}) {
    auto rep = convolution_check(2, ell);
    conv_ok = conv_ok && rep.all_pass;
    for (const auto& d : rep.discrepancies)
      if (d.g == 1 && d.closed_form == make_rat(1, 4) && d.brute_force == make_rat(1, 2))
        disc_found = true;
  }
  push(out, "5.convolution-g<=2", conv_ok, "sum_r a_r b_{g-r} = 1 for g <= 2, ell in {2,3}");
  push(out, "5.m!=1-discrepancy-reported", disc_found,
       "closed form 1/4 vs brute force 1/2 at g=1, ell=3");
  bool gaps_ok = true;
  for (const auto& row : finite_level_gap_check(2, 3)) gaps_ok = gaps_ok && row.pass;
  for (const auto& row : finite_level_gap_check(3, 2)) gaps_ok = gaps_ok && row.pass;
  push(out, "5.finite-level-gaps", gaps_ok, "|F - F(1,n)| < ell^-n for stated (ell, n)");
}

void criterion6(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  for (const auto& name : reference_example_names()) {
    auto rep = run_scan(example_scan_config(name, opt.scan_bound), opt.workers);
    auto diffs = compare_reference(rep, name);
    std::ostringstream os;
    for (const auto& r : rep.rows) os << " " << r.good << "/" << r.total;
    push(out, "6.scan-" + name, diffs.empty(), "rows" + os.str());
  }
}

void criterion7(std::vector<CheckResult>& out) {
  auto a = somos_terms(103);
  push(out, "7.terms", a[11] == 8209, "a_11 = 8209 by exact recurrence");
  bool quartic = true;
  for (unsigned n = 0; n + 3 <= 100; ++n)
    quartic = quartic && quartic_invariant(a[n], a[n + 1], a[n + 2], a[n + 3]) == 0;
  push(out, "7.quartic-invariant", quartic, "F = 0 on all windows to n = 100");
  bool scaling = true;
  for (unsigned n = 4; n + 2 <= 100; ++n) {
    Rat lhs(quartic_invariant(a[n - 1], a[n], a[n + 1], a[n + 2]));
    Rat rhs = make_rat(a[n + 2], a[n - 2]) *
              Rat(quartic_invariant(a[n - 2], a[n - 1], a[n], a[n + 1]));
    scaling = scaling && lhs == rhs;
  }
  push(out, "7.scaling-identity", scaling, "scaling identity to n = 100");
  bool ec = true;
  for (const auto& row : somos_ec_identity_check(8)) ec = ec && row.pass;
  push(out, "7.ec-identity", ec, "[2n-3](0,0) matches the term formula, n = 2..8");
  auto eq = somos_oddorder_equivalence(10000);
  push(out, "7.equivalence",
       eq.counterexamples.empty() && eq.undetermined == 0 && eq.good == 654 && eq.total == 1228,
       "zero counterexamples to 1e4; good count " + std::to_string(eq.good));
}

void criterion8(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  WeierstrassQ cm3{Rat(0), Rat(0), Rat(0), Rat(0), Rat(3)};
  PolyQ t4 = torsion_polynomial(cm3, 4);
  push(out, "8.4-torsion-x6+60x3-72",
       t4 == PolyQ({Rat(-72), Rat(0), Rat(0), Rat(60), Rat(0), Rat(0), Rat(1)}),
       "primitive 4-torsion part of y^2 = x^3 + 3");
  WeierstrassQ noncm{Rat(0), Rat(0), Rat(1), Rat(-1), Rat(0)};
  PolyQ t2 = torsion_polynomial(noncm, 2);
  push(out, "8.2-torsion-disc-592", discriminant(t2) == Rat(592),
       "b-model cubic discriminant 592");
  auto f1 = frobenius_statistics(noncm, 2, 2, opt.frob_bound);
  std::ostringstream o1;
  o1 << "tv = " << f1.tv_distance << " at (ell=2, n=2, 1e5)";
  push(out, "8.frobenius-surjective", f1.tv_distance < 0.02, o1.str());
  WeierstrassQ cmi{Rat(0), Rat(0), Rat(0), Rat(3), Rat(0)};
  auto f2 = frobenius_statistics(cmi, 2, 1, opt.frob_bound);
  std::ostringstream o2;
  o2 << "tv = " << f2.tv_distance << " at (ell=2, n=1, 1e5)";
  push(out, "8.frobenius-cm", f2.tv_distance > 0.1, o2.str());
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  criterion1(out);
  criterion2(out);
  criterion3(out);
  criterion4(out, opt);
  criterion5(out);
  criterion6(out, opt);
  criterion7(out);
  criterion8(out, opt);
  return out;
}

std::vector<CheckResult> run_verification_slow(int workers) {
  std::vector<CheckResult> out;
  for (const auto& name : reference_example_names()) {
    auto rep = run_scan(example_scan_config(name, 100000), workers);
    auto diffs = compare_reference(rep, name);
    std::ostringstream os;
    for (const auto& r : rep.rows) os << " " << r.good << "/" << r.total;
    out.push_back({"6s.scan-1e5-" + name, "rows" + os.str(), diffs.empty()});
    if (name == "noncmex") {
      double gap = density_gap(rep, make_rat(11, 21));
      out.push_back({"6s.gap-noncmex", "|ratio - 11/21| = " + std::to_string(gap), gap < 6e-4});
    }
    if (name == "cmnonsplit") {
      double gap = density_gap(rep, make_rat(8, 15));
      out.push_back({"6s.gap-cmnonsplit", "|ratio - 8/15| = " + std::to_string(gap), gap < 3e-3});
    }
  }
  return out;
}

}  // namespace ordscan
