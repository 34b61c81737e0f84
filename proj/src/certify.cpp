#include "cfw/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace cfw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

void check_nodes(const WovenFamily& family, const std::vector<std::size_t>& Y) {
  std::set<std::size_t> seen;
  for (std::size_t j : Y) {
    if (j >= family.node_count())
      throw InputError("node index " + std::to_string(j) + " out of range");
    if (!seen.insert(j).second)
      throw InputError("node index " + std::to_string(j) + " repeated");
  }
}

std::vector<double> member_uppers(const WovenFamily& family) {
  std::vector<double> b;
  for (const auto& m : family.members()) b.push_back(fusion_bounds(m).upper);
  return b;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void add_indexed(Certificate& c, const std::string& prefix,
                 const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    c.hypotheses.emplace_back(prefix + std::to_string(i + 1), values[i]);
}

void note_uncertified(Certificate& c) {
  if (c.truth && !c.truth->certified)
    c.notes += (c.notes.empty() ? "" : "; ") +
               std::string("true bounds from non-exhaustive search (uncertified)");
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inapplicable") return Verdict::inapplicable;
  throw InputError("unknown verdict '" + s + "'");
}

std::optional<double> Certificate::hypothesis(const std::string& name) const {
  for (const auto& [k, v] : hypotheses)
    if (k == name) return v;
  return std::nullopt;
}

UniversalBounds search_bounds(const WeavingTerms& terms,
                              const CertifyOptions& opts) {
  try {
    return universal_bounds(terms, opts.strategy);
  } catch (const BudgetExceeded&) {
    if (!opts.allow_fallback) throw;
    return universal_bounds(terms, opts.fallback);
  }
}

void bracket(Certificate& cert, double tol) {
  const bool ok = cert.truth &&
                  cert.claimed.lower <= cert.truth->lower + tol &&
                  cert.claimed.upper >= cert.truth->upper - tol;
  cert.verdict = ok ? Verdict::pass : Verdict::fail;
}

Certificate certify_bessel_sum(const WovenFamily& family,
                               const CertifyOptions& opts) {
  Certificate c;
  c.theorem = "bessel_sum";
  const auto B = member_uppers(family);
  add_indexed(c, "B_", B);
  c.hypotheses.emplace_back("sum_B", sum(B));
  c.claimed = {0.0, sum(B)};
  c.truth = search_bounds(weaving_terms(family), opts);
  bracket(c, opts.tol);
  note_uncertified(c);
  return c;
}

Certificate certify_operator_image(const WovenFamily& family,
                                   const Operator& U,
                                   std::optional<FrameBounds> assumed,
                                   const CertifyOptions& opts) {
  const Index d = family.ambient_dim();
  if (U.rows() != d || U.cols() != d)
    throw InputError("operator must be " + std::to_string(d) + "x" +
                     std::to_string(d));
  Certificate c;
  c.theorem = "operator_image";
  if (!assumed) {
    const auto ub = search_bounds(weaving_terms(family), opts);
    assumed = FrameBounds{ub.lower, ub.upper};
  }
  const Subspace range = column_span(U, opts.rank_tol);
  const double norm_u = operator_norm(U);
  const double norm_pinv = operator_norm(pseudo_inverse(U, opts.rank_tol));
  const double distortion = norm_pinv * norm_pinv * norm_u * norm_u;
  c.hypotheses = {{"norm_U", norm_u},
                  {"norm_U_pinv", norm_pinv},
                  {"rank_U", static_cast<double>(range.dim())},
                  {"assumed_lower", assumed->lower},
                  {"assumed_upper", assumed->upper},
                  {"distortion", distortion}};
  if (range.dim() == 0) {
    c.notes = "U is zero; range(U) is trivial";
    return c;
  }
  c.claimed = {assumed->lower / distortion, assumed->upper * distortion};

  std::vector<CFusionFrame> image;
  for (const auto& m : family.members()) {
    std::vector<Subspace> s;
    for (const auto& V : m.subspaces())
      s.push_back(image_subspace(U, V, opts.rank_tol));
    image.emplace_back(m.space(), std::move(s), m.weights());
  }
  const WovenFamily image_family(std::move(image));
  c.truth = search_bounds(weaving_terms(image_family).compressed(range), opts);
  bracket(c, opts.tol);
  if (c.verdict == Verdict::fail && range.dim() < d)
    c.notes = "U is not injective (rank " + std::to_string(range.dim()) +
              " < " + std::to_string(d) +
              "); distinct subspaces can collapse onto one image";
  note_uncertified(c);
  return c;
}

Certificate certify_subspace_intersection(const WovenFamily& family,
                                          const Subspace& W,
                                          const CertifyOptions& opts) {
  if (W.ambient_dim() != family.ambient_dim())
    throw InputError("W lives in a different ambient space");
  Certificate c;
  c.theorem = "intersection";
  const Operator PW = projector(W);
  double worst = 0.0;
  for (const auto& m : family.members()) {
    for (const auto& V : m.subspaces()) {
      const Operator P = projector(V);
      worst = std::max(worst, operator_norm(P * PW - PW * P));
    }
  }
  c.hypotheses = {{"dim_W", static_cast<double>(W.dim())},
                  {"max_commutator", worst}};
  if (worst > opts.commute_tol) {
    c.notes = "projectors do not commute with P_W (max commutator " +
              fmt(worst) + ")";
    return c;
  }
  if (W.dim() == 0) {
    c.notes = "W is the zero subspace";
    return c;
  }
  const auto original = search_bounds(weaving_terms(family), opts);
  c.claimed = {original.lower, original.upper};
  c.hypotheses.emplace_back("original_lower", original.lower);
  c.hypotheses.emplace_back("original_upper", original.upper);

  std::vector<CFusionFrame> cut;
  for (const auto& m : family.members()) {
    std::vector<Subspace> s;
    for (const auto& V : m.subspaces())
      s.push_back(intersect_subspaces(V, W, opts.rank_tol));
    cut.emplace_back(m.space(), std::move(s), m.weights());
  }
  const WovenFamily cut_family(std::move(cut));
  c.truth = search_bounds(weaving_terms(cut_family).compressed(W), opts);
  bracket(c, opts.tol);
  note_uncertified(c);
  return c;
}

Certificate certify_subset_extension(const WovenFamily& family,
                                     const std::vector<std::size_t>& Y,
                                     const CertifyOptions& opts) {
  check_nodes(family, Y);
  Certificate c;
  c.theorem = "subset_extension";
  const auto B = member_uppers(family);
  add_indexed(c, "B_", B);
  c.hypotheses.emplace_back("sum_B", sum(B));
  c.hypotheses.emplace_back("subset_size", static_cast<double>(Y.size()));
  if (Y.empty()) {
    c.notes = "Y is empty";
    return c;
  }
  const auto on_y = search_bounds(weaving_terms(family.restricted(Y)), opts);
  c.hypotheses.emplace_back("A_Y", on_y.lower);
  c.hypotheses.emplace_back("B_Y", on_y.upper);
  if (on_y.lower <= opts.frame_floor) {
    c.notes = "restriction to Y is not woven (lower bound " +
              fmt(on_y.lower) + ")";
    return c;
  }
  c.claimed = {on_y.lower, sum(B)};
  c.truth = search_bounds(weaving_terms(family), opts);
  bracket(c, opts.tol);
  note_uncertified(c);
  return c;
}

double removal_constant(const WovenFamily& family,
                        const std::vector<std::size_t>& Y, std::size_t n) {
  if (n >= family.member_count())
    throw InputError("member index out of range");
  check_nodes(family, Y);
  std::vector<bool> kept(family.node_count(), false);
  for (std::size_t j : Y) kept[j] = true;
  const WeavingTerms t = weaving_terms(family);
  Operator rest = Operator::Zero(t.dim(), t.dim());
  for (std::size_t i = 0; i < family.member_count(); ++i) {
    if (i == n) continue;
    for (std::size_t j = 0; j < family.node_count(); ++j)
      if (!kept[j]) rest += t.term(i, j);
  }
  return extreme_eigs(rest).max;
}

Certificate certify_removal(const WovenFamily& family,
                            const std::vector<std::size_t>& Y, std::size_t n,
                            std::optional<double> user_D,
                            const CertifyOptions& opts) {
  Certificate c;
  c.theorem = "removal";
  const double optimal = removal_constant(family, Y, n);
  const double D = user_D ? std::max(*user_D, optimal) : optimal;
  const auto full = search_bounds(weaving_terms(family), opts);
  c.hypotheses = {{"n", static_cast<double>(n + 1)},
                  {"D_optimal", optimal},
                  {"D", D},
                  {"A", full.lower},
                  {"B", full.upper}};
  if (full.lower <= opts.frame_floor) {
    c.notes = "family is not woven on X";
    return c;
  }
  if (D >= full.lower || Y.empty()) {
    c.notes = "D = " + fmt(D) + " is not below A = " + fmt(full.lower);
    return c;
  }
  c.claimed = {full.lower - D, full.upper};
  c.truth = search_bounds(weaving_terms(family.restricted(Y)), opts);
  bracket(c, opts.tol);
  note_uncertified(c);
  return c;
}

double compute_min_closeness_N(const WovenFamily& family, double rank_tol) {
  const std::size_t m = family.member_count();
  double N = 0.0;
  for (std::size_t j = 0; j < family.node_count(); ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const Operator Li = family.member(i).weight(j) *
                          projector(family.member(i).subspace(j));
      for (std::size_t k = i + 1; k < m; ++k) {
        const Operator Lk = family.member(k).weight(j) *
                            projector(family.member(k).subspace(j));
        // diff is self-adjoint, so diff diff^H is the quadratic form
        // ||(v_i P_i - v_k P_k) h||^2 and each side is a Douglas problem.
        const Operator diff = Li - Lk;
        for (const Operator* L : {&Li, &Lk}) {
          const DouglasResult r = douglas_factor(diff, *L, rank_tol);
          if (!r.feasible) return kInf;
          N = std::max(N, r.alpha);
        }
      }
    }
  }
  return N;
}

Certificate certify_closeness_woven(const WovenFamily& family,
                                    std::optional<double> user_N,
                                    const CertifyOptions& opts) {
  Certificate c;
  c.theorem = "closeness_woven";
  const std::size_t m = family.member_count();
  const double optimal = compute_min_closeness_N(family, opts.rank_tol);
  const double N = user_N ? std::max(*user_N, optimal) : optimal;
  std::vector<double> A, B;
  for (const auto& mem : family.members()) {
    const auto b = fusion_bounds(mem);
    A.push_back(b.lower);
    B.push_back(b.upper);
  }
  c.hypotheses = {{"N_optimal", optimal}, {"N", N}};
  add_indexed(c, "A_", A);
  add_indexed(c, "B_", B);
  c.hypotheses.emplace_back("sum_A", sum(A));
  c.hypotheses.emplace_back("sum_B", sum(B));
  if (!std::isfinite(N)) {
    c.notes = "no finite closeness constant (member subspaces differ)";
    return c;
  }
  if (*std::min_element(A.begin(), A.end()) <= opts.frame_floor) {
    c.notes = "some member is not a frame";
    return c;
  }
  const double mm = static_cast<double>(m - 1);
  const double denom = mm * (N + 1.0) + 1.0;
  // ||a||^2 <= (1 + 1/t)||a - b||^2 + (1 + t)||b||^2 at t = sqrt(N).
  const double sharp = mm * (1.0 + std::sqrt(N)) * (1.0 + std::sqrt(N)) + 1.0;
  c.hypotheses.emplace_back("denominator", denom);
  c.hypotheses.emplace_back("triangle_denominator", sharp);
  c.hypotheses.emplace_back("triangle_lower", sum(A) / sharp);
  c.claimed = {sum(A) / denom, sum(B)};
  c.truth = search_bounds(weaving_terms(family), opts);
  bracket(c, opts.tol);
  if (c.verdict == Verdict::fail) {
    const bool sharp_ok = sum(A) / sharp <= c.truth->lower + opts.tol;
    c.notes = "claimed lower " + fmt(c.claimed.lower) +
              " exceeds the true universal lower " + fmt(c.truth->lower) +
              "; with (1+sqrt(N))^2 in place of N+1 the bound is " +
              fmt(sum(A) / sharp) + (sharp_ok ? " (holds)" : " (also fails)");
  }
  note_uncertified(c);
  return c;
}

Certificate certify_upper_not_optimal(const WovenFamily& family,
                                      double margin_rel,
                                      const CertifyOptions& opts) {
  if (family.member_count() != 2)
    throw InputError("upper-bound optimality check needs exactly two members");
  Certificate c;
  c.theorem = "upper_not_optimal";
  const auto B = member_uppers(family);
  const double total = B[0] + B[1];
  const double margin = margin_rel * total;
  c.truth = search_bounds(weaving_terms(family), opts);
  const double gap = total - c.truth->upper;
  c.hypotheses = {{"B_1", B[0]}, {"B_2", B[1]}, {"sum_B", total},
                  {"margin", margin}, {"gap", gap}};
  c.claimed = {0.0, total - margin};
  if (c.truth->lower <= opts.frame_floor) {
    c.verdict = Verdict::inapplicable;
    c.notes = "family is not woven";
  } else if (c.truth->upper > total + opts.tol) {
    c.verdict = Verdict::fail;
    c.notes = "universal upper exceeds B_1 + B_2";
  } else if (gap > margin) {
    c.verdict = Verdict::pass;
  } else {
    c.verdict = Verdict::inapplicable;
    c.notes = "gap " + fmt(gap) + " is below the margin " + fmt(margin);
  }
  note_uncertified(c);
  return c;
}

FrameBounds frame_sequence_bounds(const CFrame& frame, double rank_tol) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(cframe_operator(frame));
  const double top = ev(ev.size() - 1);
  double low = 0.0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > rank_tol * top) {
      low = ev(i);
      break;
    }
  }
  return {low, top};
}

Certificate certify_product_equivalence(const LiftedProduct& lifted,
                                        const CertifyOptions& opts) {
  Certificate c;
  c.theorem = "product_equivalence";
  double A = kInf, B = 0.0;
  for (const auto& F : lifted.inner) {
    const auto b = frame_sequence_bounds(F, opts.rank_tol);
    A = std::min(A, b.lower);
    B = std::max(B, b.upper);
  }
  const auto product = search_bounds(product_weaving_terms(lifted), opts);
  const auto fusion = search_bounds(weaving_terms(lifted.fusion), opts);
  const double C = product.lower, D = product.upper;
  const double Cf = fusion.lower, Df = fusion.upper;
  c.hypotheses = {{"A", A},         {"B", B},
                  {"product_lower", C}, {"product_upper", D},
                  {"fusion_lower", Cf}, {"fusion_upper", Df},
                  {"A_times_fusion_lower", A * Cf},
                  {"B_times_fusion_upper", B * Df},
                  {"product_woven", C > opts.frame_floor ? 1.0 : 0.0},
                  {"fusion_woven", Cf > opts.frame_floor ? 1.0 : 0.0}};
  if (!(A > 0.0)) {
    c.notes = "an inner c-frame is degenerate";
    return c;
  }
  c.claimed = {C / B, D / A};
  c.truth = fusion;
  bracket(c, opts.tol);
  const bool back_lower = C >= A * Cf - opts.tol;
  const bool back_upper = D <= B * Df + opts.tol;
  if (!back_lower || !back_upper) {
    c.verdict = Verdict::fail;
    c.notes = std::string("product bounds violate ") +
              (!back_lower ? "C >= A C' " : "") +
              (!back_upper ? "D <= B D'" : "");
  }
  if ((C > opts.frame_floor) != (Cf > opts.frame_floor)) {
    c.verdict = Verdict::fail;
    c.notes += (c.notes.empty() ? "" : "; ") +
               std::string("exactly one side is woven");
  }
  if (!product.certified || !fusion.certified)
    c.notes += (c.notes.empty() ? "" : "; ") +
               std::string("non-exhaustive search (uncertified)");
  return c;
}

}  // namespace cfw
