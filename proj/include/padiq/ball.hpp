#pragma once

#include "padiq/integer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace padiq {

/// B(center, radius) = { x : v_p(x - center) >= radius } for a fixed prime.
/// An infinite radius is the singleton {center}. For finite radii the centre
/// is stored as its least nonnegative residue mod p^radius, so structural
/// equality is set equality.
class Ball {
public:
    Ball(Int prime, Int center, ValN radius);
    Ball(Int prime, Int center, std::int64_t radius) : Ball(std::move(prime), std::move(center), ValN::fin(radius)) {}

    const Int& prime() const { return prime_; }
    const Int& center() const { return center_; }
    const ValN& radius() const { return radius_; }

    bool contains(const Int& x) const;

    /// The p^k sub-balls of radius radius()+k, in increasing residue order.
    std::vector<Ball> subdivide(std::int64_t k) const;

    std::string to_string() const;

    friend bool operator==(const Ball&, const Ball&) = default;

private:
    Int prime_;
    Int center_;
    ValN radius_;
};

enum class BallRelation { Disjoint, Equal, FirstInsideSecond, SecondInsideFirst };

/// Exact set relation; throws DomainError on a prime mismatch.
BallRelation ball_compare(const Ball& a, const Ball& b);

/// a ⊆ b
bool ball_within(const Ball& a, const Ball& b);

/// outer \ ∪ holes with holes strictly inside outer and pairwise disjoint.
class SwissCheese {
public:
    /// Validates the invariants and rejects an empty result.
    SwissCheese(Ball outer, std::vector<Ball> holes = {});

    const Ball& outer() const { return outer_; }
    const std::vector<Ball>& holes() const { return holes_; }
    const Int& prime() const { return outer_.prime(); }

    bool member(const Int& x) const;

    std::string to_string() const;

    friend bool operator==(const SwissCheese&, const SwissCheese&) = default;

private:
    struct Unchecked {};
    SwissCheese(Unchecked, Ball outer, std::vector<Ball> holes)
        : outer_(std::move(outer)), holes_(std::move(holes)) {}
    friend std::vector<SwissCheese> split_cheese(const SwissCheese&, std::int64_t);
    friend std::optional<SwissCheese> union_cheeses(const SwissCheese&, const SwissCheese&);
    friend Ball minimal_outer_ball(const SwissCheese&);

    Ball outer_;
    std::vector<Ball> holes_;
};

inline bool cheese_member(const SwissCheese& f, const Int& x) { return f.member(x); }

/// True when the holes cover `outer` entirely. Holes may overlap and need
/// not lie inside `outer`.
bool is_covered(const Ball& outer, const std::vector<Ball>& holes);

/// Disjoint cheeses of radius >= rad(F)+k whose union is F; fully eaten
/// pieces are dropped. Throws DomainError for an infinite outer radius.
std::vector<SwissCheese> split_cheese(const SwissCheese& f, std::int64_t k);

/// The union of two intersecting cheeses as one cheese, or nothing when the
/// two sets are disjoint.
std::optional<SwissCheese> union_cheeses(const SwissCheese& a, const SwissCheese& b);

/// The unique smallest ball containing F.
Ball minimal_outer_ball(const SwissCheese& f);

/// p^{k_N} - Σ p^{k_N - k_m}
Int residual_count(const Ball& outer, const std::vector<Ball>& holes);

/// The residual balls of radius rad(outer)+k_N tiling outer \ ∪holes, where
/// holes is an antichain strictly inside outer with finite radii. Throws
/// DomainError on violated preconditions and ResourceError when more than
/// `enumeration_cap` sub-balls would have to be examined.
std::vector<Ball> residual_balls(const Ball& outer, const std::vector<Ball>& holes,
                                 std::size_t enumeration_cap = std::size_t(1) << 20);

/// Some ball (not necessarily of maximal radius) inside outer and outside
/// every hole, found by descending the subdivision tree; nothing when the
/// holes cover outer. Holes may be arbitrary balls of the same prime.
std::optional<Ball> first_residual_ball(const Ball& outer, const std::vector<Ball>& holes);

}  // namespace padiq
