#pragma once

// Presets and the quadratic constructions: direct sum, skew tensor product,
// twisted extension, opposite, and trees folding through them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul/free_algebra.hpp"

namespace koszul {

// ---- presets ----
QuadraticPresentation free_preset(std::size_t d, std::uint32_t p);
/// case 1: d = 2k generators over F_p, symplectic pairing
QuadraticPresentation demushkin1(std::size_t k, std::uint32_t p);
/// case 2: p = 2, d = 2k+1
QuadraticPresentation demushkin2(std::size_t k);
/// case 3: p = 2, d = 2k
QuadraticPresentation demushkin3(std::size_t k);
/// F_2[t]
QuadraticPresentation c2_preset();
/// F_p<t> with no relations
QuadraticPresentation poly_t(std::uint32_t p);
/// F_2<t | t^2>
QuadraticPresentation t_mod_t2();
/// generators t, a2..ad
QuadraticPresentation superpythagorean(std::size_t d);
QuadraticPresentation rigid_level2(std::size_t d);
/// exterior algebra on m generators x1..xm
QuadraticPresentation exterior(std::size_t m, std::uint32_t p);

// ---- constructions ----
QuadraticPresentation direct_sum(const QuadraticPresentation& a, const QuadraticPresentation& b);
QuadraticPresentation skew_tensor(const QuadraticPresentation& a, const QuadraticPresentation& b);
/// A(t | x_1..x_m). `t` is in generator coordinates of `a`; `names` defaults
/// to x1..xm. Throws invalid_twist unless t + t = 0.
QuadraticPresentation twisted_extension(const QuadraticPresentation& a, const Vector& t,
                                        std::size_t m,
                                        std::vector<std::string> names = {});
QuadraticPresentation opposite(const QuadraticPresentation& a);

/// Vector of the designated element, or throws invalid_twist when the
/// presentation has none.
Vector designated_element(const QuadraticPresentation& a);

struct ConstructorTree {
  enum class Kind { preset, direct_sum, skew_tensor, twisted_extension, opposite };

  Kind kind = Kind::preset;
  // preset
  std::string preset;               // free, demushkin1, ..., exterior
  std::vector<long long> params;    // positional, meaning depends on preset
  // twisted extension
  enum class Twist { designated, zero, explicit_vector };
  Twist twist = Twist::designated;
  Vector t;
  std::size_t m = 1;
  std::vector<std::string> names;

  std::vector<std::shared_ptr<const ConstructorTree>> children;
};

/// Preset by name with positional integer parameters, e.g. ("free", {3, 2}).
QuadraticPresentation make_preset(const std::string& kind, const std::vector<long long>& params);

QuadraticPresentation build_tree(const ConstructorTree& tree);

}  // namespace koszul
