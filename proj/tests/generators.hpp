#pragma once

#include "motinf/arrangement.hpp"
#include "motinf/cech.hpp"
#include "motinf/error.hpp"

#include <map>
#include <random>
#include <vector>

namespace gen {

namespace ar = motinf::arrangement;
namespace mo = motinf::motives;

struct CechConfig {
    int elements;
    std::map<mo::Subset, mo::Stratum> strata;
};

// Singletons are P1 or a point; pairs of P1s meet in 1..3 points; higher
// intersections are single points whose faces are single points.
inline CechConfig random_cech_config(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> elems(1, 5), coin(0, 1), pts(1, 3);
    CechConfig c{elems(rng), {}};
    for (int mask = 1; mask < (1 << c.elements); ++mask) {
        mo::Subset j;
        for (int i = 0; i < c.elements; ++i) {
            if (mask & (1 << i)) j.push_back(i);
        }
        if (j.size() == 1) {
            c.strata[j] = coin(rng) ? mo::Stratum::p1() : mo::Stratum::points();
            continue;
        }
        bool faces_ok = true;
        bool all_p1 = true;
        for (std::size_t k = 0; k < j.size(); ++k) {
            mo::Subset f = j;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
            auto it = c.strata.find(f);
            if (it == c.strata.end()) {
                faces_ok = false;
                break;
            }
            if (it->second.kind != mo::Stratum::Kind::P1) all_p1 = false;
            if (it->second.kind == mo::Stratum::Kind::Points && it->second.count != 1) faces_ok = false;
        }
        if (!faces_ok || !coin(rng)) continue;
        c.strata[j] = mo::Stratum::points(j.size() == 2 && all_p1 ? pts(rng) : 1);
    }
    return c;
}

/// Dimension 1..4, up to 6 distinct hyperplanes, coefficients in [-3, 3].
inline ar::Arrangement random_arrangement(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dim(1, 4), count(0, 6);
    std::uniform_int_distribution<int> coeff(-3, 3);
    const std::size_t d = dim(rng);
    const std::size_t want = count(rng);
    std::vector<ar::Hyperplane> hs;
    for (int attempt = 0; hs.size() < want && attempt < 200; ++attempt) {
        std::vector<long long> n(d);
        for (auto& x : n) x = coeff(rng);
        try {
            auto next = hs;
            ar::Hyperplane h;
            for (auto x : n) h.normal.emplace_back(x);
            h.constant = coeff(rng);
            next.push_back(std::move(h));
            ar::Arrangement(d, next);
            hs = std::move(next);
        } catch (const motinf::Error&) {
        }
    }
    return ar::Arrangement(d, hs);
}

}  // namespace gen
