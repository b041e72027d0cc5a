#include "ellbeta/bernoulli.hpp"

#include <mutex>

namespace ellbeta {

// sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1, solved for B_n.
Rat bernoulli_number(unsigned long n) {
    static std::vector<Rat> cache{Rat(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (cache.size() <= n) {
        unsigned long m = cache.size();
        Rat s = 0;
        for (unsigned long k = 0; k < m; ++k) s += Rat(binomial(m + 1, k)) * cache[k];
        cache.push_back(-s / Rat(m + 1));
    }
    return cache[n];
}

// B_w(x) = sum_k C(w, k) B_k x^(w-k), evaluated at x = 1/3.
Rat bernoulli_poly_third(unsigned long w) {
    Rat s = 0;
    Rat third(1, 3);
    for (unsigned long k = 0; k <= w; ++k)
        s += Rat(binomial(w, k)) * bernoulli_number(k) * rat_pow(third, w - k);
    return s;
}

Rat generalized_bernoulli_chi(unsigned long w) {
    ELLBETA_CHECK(w >= 1);
    ELLBETA_CHECK_MSG(w % 2 == 1, "odd character needs odd weight, got " << w);
    return 2 * Rat(ipow(3, w - 1)) * bernoulli_poly_third(w);
}

}  // namespace ellbeta
