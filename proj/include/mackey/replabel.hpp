#pragma once

#include "mackey/mackey.hpp"

#include <string>
#include <vector>

namespace mackey {

// lambda(r p^k) with multiplicity `coefficient`; r is kept for the twist-invariance check.
struct TwistedLambda {
    int k = 0;
    long r = 1;
    long coefficient = 0;
    bool operator==(const TwistedLambda&) const = default;
};

// Virtual representation sum a[k] lambda_k + t + s sigma (+ twisted lambdas).
struct RepLabel {
    std::vector<long> a;  // size n
    long t = 0;
    long s = 0;           // p = 2 only
    std::vector<TwistedLambda> twisted;

    long dimension() const;
    bool is_actual() const;  // every coefficient nonnegative
    bool operator==(const RepLabel&) const = default;
};

RepLabel zero_rep(const TowerShape& shape);

// Grammar: signed terms `c L<k>`, `c s`, `c` (trivial), optional `@r` after `L<k>`; whitespace is ignored.
// Throws ValidationError naming the offending token.
RepLabel parse_rep(const std::string& text, const TowerShape& shape);

// Folds twists into a[] and, for p = 2, rewrites lambda_{n-1} as 2 sigma.
RepLabel canonicalize(const RepLabel& v, const TowerShape& shape);

RepLabel add(const RepLabel& x, const RepLabel& y);
RepLabel negate(const RepLabel& x);
RepLabel lambda_rep(const TowerShape& shape, int k, long coefficient = 1);
RepLabel trivial_rep(const TowerShape& shape, long t);

// Canonical text, highest lambda first, then sigma, then the trivial part (e.g. "2L1-3L0+4").
std::string to_string(const RepLabel& v);

}  // namespace mackey
