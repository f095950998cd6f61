#include "koszul/ideals.hpp"

#include <algorithm>

#include "koszul/error.hpp"

namespace koszul {

std::string_view to_string(Side s) { return s == Side::left ? "left" : "right"; }

std::string linear_form(std::span<const Coeff> v, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (v[i] != 1) out += std::to_string(v[i]) + "*";
    out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

std::string describe_subspace(const Subspace& w, const std::vector<std::string>& names) {
  if (w.dim() == 0) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < w.dim(); ++i) {
    if (i) out += ", ";
    out += linear_form(w.basis_vector(i), names);
  }
  return out + ")";
}

const EchelonSpace& LinearIdeal::component(std::size_t n) const {
  if (n >= comps_.size())
    throw Error(ErrorCode::degree_overflow,
                "ideal component " + std::to_string(n) + " beyond computed degree " +
                    std::to_string(top()));
  return comps_[n];
}

std::vector<std::size_t> LinearIdeal::dims() const {
  std::vector<std::size_t> out;
  for (const auto& c : comps_) out.push_back(c.dim());
  return out;
}

GradedAlgebra acting_algebra(const GradedAlgebra& A, Side side) {
  return side == Side::left ? A : A.opposite();
}

std::vector<EchelonSpace> left_ideal_components(const GradedAlgebra& B, const Subspace& w,
                                                std::size_t top) {
  if (top > B.truncation())
    throw Error(ErrorCode::degree_overflow, "ideal requested beyond the truncation degree");
  if (w.ambient_dim() != B.gens())
    throw Error(ErrorCode::invalid_params, "degree-1 subspace has the wrong ambient dimension");
  std::vector<EchelonSpace> comps;
  comps.emplace_back(B.dim(0), B.field());
  if (top == 0) return comps;
  comps.push_back(EchelonSpace::from_subspace(w));
  for (std::size_t n = 1; n < top; ++n) {
    EchelonSpace next(B.dim(n + 1), B.field());
    if (comps[n].dim() > 0 && next.ambient_dim() > 0) {
      for (std::uint32_t g = 0; g < B.gens(); ++g) {
        const SparseMatrix& L = B.left(n, g);
        for (const auto& row : comps[n].rows()) {
          next.insert(L.apply(row, B.field()));
          if (next.dim() == next.ambient_dim()) break;
        }
        if (next.dim() == next.ambient_dim()) break;
      }
    }
    comps.push_back(std::move(next));
  }
  return comps;
}

LinearIdeal ideal_from_subspace(const GradedAlgebra& A, const Subspace& w, Side side,
                                std::optional<std::size_t> top) {
  LinearIdeal I;
  I.algebra_ = A;
  I.side_ = side;
  I.w_ = w;
  I.comps_ = left_ideal_components(acting_algebra(A, side), w, top.value_or(A.truncation()));
  return I;
}

bool ideal_equal(const LinearIdeal& a, const LinearIdeal& b) {
  if (!a.algebra().same_realization(b.algebra()) || a.side() != b.side())
    throw Error(ErrorCode::mismatched_algebra, "ideals live in different algebras or sides");
  if (a.top() != b.top()) throw Error(ErrorCode::mismatched_algebra, "ideals truncated differently");
  for (std::size_t n = 0; n <= a.top(); ++n)
    if (!a.components()[n].same_span(b.components()[n])) return false;
  return true;
}

bool membership(const LinearIdeal& I, const Element& a) {
  return I.component(a.degree).contains(a.coords);
}

std::vector<std::size_t> ColonResult::dims() const {
  std::vector<std::size_t> out;
  for (const auto& c : components) out.push_back(c.dim());
  return out;
}

std::vector<std::size_t> colon_dims(const GradedAlgebra& B,
                                    const std::vector<EchelonSpace>& jc,
                                    std::span<const Coeff> x, std::vector<EchelonSpace>* kernels,
                                    std::size_t keep_through) {
  const std::size_t top = jc.size() - 1;
  std::vector<std::size_t> out;
  if (kernels) kernels->clear();
  for (std::size_t n = 0; n < top; ++n) {
    SparseMatrix rx = B.right_by(n, x);
    std::vector<SparseVec> images;
    images.reserve(B.dim(n));
    for (std::size_t i = 0; i < B.dim(n); ++i) images.push_back(jc[n + 1].reduce(rx.column(i)));
    if (kernels && n <= keep_through) {
      auto ker = kernel_of(images, B.dim(n + 1), B.field());
      kernels->push_back(EchelonSpace::span(B.dim(n), B.field(), ker));
      out.push_back(kernels->back().dim());
    } else {
      out.push_back(B.dim(n) - rank_of(images, B.dim(n + 1), B.field()));
    }
  }
  return out;
}

std::optional<Vector> colon_key(const Subspace& w, std::span<const Coeff> x) {
  Vector r = w.reduce(Vector(x.begin(), x.end()));
  auto it = std::find_if(r.begin(), r.end(), [](Coeff c) { return c != 0; });
  if (it == r.end()) return std::nullopt;
  const PrimeField& f = w.field();
  Coeff inv = f.inv(*it);
  for (auto& c : r) c = f.mul(c, inv);
  return r;
}

namespace {

bool certified_through(const GradedAlgebra& A, std::size_t top) {
  for (std::size_t m = 0; m <= std::min(top + 1, A.truncation()); ++m)
    if (A.dim(m) == 0) return true;
  return false;
}

GenerationVerdict generation_in(const GradedAlgebra& B, const GradedAlgebra& A,
                                const std::vector<EchelonSpace>& family) {
  GenerationVerdict v;
  const std::size_t top = family.empty() ? 0 : family.size() - 1;
  v.bound = top;
  v.status = certified_through(A, top) ? GenerationVerdict::Status::certified_yes
                                       : GenerationVerdict::Status::yes_up_to;
  if (top < 2) return v;
  auto gen = left_ideal_components(B, family[1].to_dense(), top);
  for (std::size_t n = 2; n <= top; ++n) {
    if (family[n].same_span(gen[n])) continue;
    v.status = GenerationVerdict::Status::no;
    v.witness_degree = n;
    for (const auto& row : family[n].canonical_basis()) {
      if (!gen[n].contains(row)) {
        v.witness = row;
        return v;
      }
    }
    for (const auto& row : gen[n].canonical_basis()) {
      if (!family[n].contains(row)) {
        v.witness = row;
        return v;
      }
    }
    return v;
  }
  return v;
}

}  // namespace

GenerationVerdict generated_in_degree_one(const GradedAlgebra& A,
                                          const std::vector<EchelonSpace>& family, Side side) {
  return generation_in(acting_algebra(A, side), A, family);
}

ColonResult colon(const LinearIdeal& J, std::span<const Coeff> x) {
  const GradedAlgebra& A = J.algebra();
  if (x.size() != A.gens()) throw Error(ErrorCode::invalid_params, "x must be a degree-1 element");
  if (J.top() < 2) throw Error(ErrorCode::degree_overflow, "colon needs the ideal through degree 2");
  GradedAlgebra B = acting_algebra(A, J.side());
  ColonResult out;
  out.side = J.side();
  out.x.assign(x.begin(), x.end());
  const std::size_t top = J.top() - 1;
  if (!colon_key(J.degree_one(), x)) {
    out.degenerate = true;
    for (std::size_t n = 0; n <= top; ++n)
      out.components.push_back(EchelonSpace::full(A.dim(n), A.field()));
    out.verdict.bound = top;
    out.verdict.status = certified_through(A, top) ? GenerationVerdict::Status::certified_yes
                                                   : GenerationVerdict::Status::yes_up_to;
    return out;
  }
  colon_dims(B, J.components(), x, &out.components);
  out.verdict = generation_in(B, A, out.components);
  return out;
}

std::optional<std::vector<std::size_t>> generated_by_subset_of(const GradedAlgebra& A,
                                                               const ColonResult& c,
                                                               const std::vector<Vector>& X) {
  std::vector<std::size_t> S;
  std::vector<Vector> chosen;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (c.components.at(1).contains(SparseVec::from_dense(X[i]))) {
      S.push_back(i);
      chosen.push_back(X[i]);
    }
  }
  GradedAlgebra B = acting_algebra(A, c.side);
  auto gen = left_ideal_components(B, Subspace::span(A.gens(), A.field(), chosen), c.top());
  for (std::size_t n = 1; n <= c.top(); ++n)
    if (!c.components[n].same_span(gen[n])) return std::nullopt;
  return S;
}

std::vector<std::size_t> IdealDimCache::dims(const Subspace& w) {
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
  }
  auto comps = left_ideal_components(b_, w, top_);
  std::vector<std::size_t> d;
  for (const auto& c : comps) d.push_back(c.dim());
  std::lock_guard lock(mu_);
  cache_.emplace(w, d);
  return d;
}

}  // namespace koszul
