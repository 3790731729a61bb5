#include "cubic/intfactor.hpp"

#include "cubic/errors.hpp"

namespace cubic {

namespace {

bool is_probable_prime(const Integer& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of n,
// which must be odd, composite and > 1.
Integer pollard_brent(const Integer& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEul);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Integer y = rng.get_z_range(n - 3) + 1;
        Integer c = rng.get_z_range(n - 1) + 1;
        Integer m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
            Integer k = 0;
            while (k < r && g == 1) {
                ys = y;
                Integer limit = r - k < m ? r - k : m;
                for (Integer i = 0; i < limit; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                Integer d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
    throw FactorizationLimit("pollard rho failed on " + n.get_str());
}

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
    if (n <= 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer f = pollard_brent(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

}  // namespace

std::map<Integer, unsigned> factorize(Integer n) {
    std::map<Integer, unsigned> out;
    n = abs(n);
    if (n <= 1) return out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (n % p == 0) { out[Integer(p)] += 1; n /= p; }
    }
    // trial division by 6k +/- 1 up to 10^4
    for (long d = 17; d <= 10000 && n > 1; d += 6) {
        for (long p : {d, d + 2}) {
            while (n % p == 0) { out[Integer(p)] += 1; n /= p; }
        }
    }
    factor_into(n, out);
    return out;
}

std::vector<Integer> positive_divisors(const Integer& n, std::size_t cap) {
    std::vector<Integer> divs{Integer(1)};
    if (n == 0) return divs;
    for (const auto& [p, e] : factorize(n)) {
        std::size_t base = divs.size();
        if (base * (e + 1) > cap) throw FactorizationLimit("divisor count exceeds cap");
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

}  // namespace cubic
