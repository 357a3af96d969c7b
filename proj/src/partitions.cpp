#include "kpcohft/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace kpcohft {

int partition_size(const Partition &p) {
    int n = 0;
    for (int x : p) n += x;
    return n;
}

int partition_length(const Partition &p) { return static_cast<int>(p.size()); }

static void gen_partitions(int n, int max_part, Partition &cur,
                           std::vector<Partition> &out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        gen_partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    gen_partitions(n, n, cur, out);
    return out;
}

std::vector<Partition> partitions_up_to(int n) {
    std::vector<Partition> out;
    for (int d = 0; d <= n; ++d) {
        auto pd = partitions_of(d);
        out.insert(out.end(), pd.begin(), pd.end());
    }
    return out;
}

Partition conjugate(const Partition &p) {
    Partition c;
    if (p.empty()) return c;
    c.resize(p[0]);
    for (int j = 0; j < p[0]; ++j) {
        int cnt = 0;
        for (int x : p)
            if (x > j) ++cnt;
        c[j] = cnt;
    }
    return c;
}

Int z_mu(const Partition &mu) {
    Int z = 1;
    int i = 0, n = static_cast<int>(mu.size());
    while (i < n) {
        int j = i;
        while (j < n && mu[j] == mu[i]) ++j;
        int m = j - i;
        for (int t = 0; t < m; ++t) z *= mu[i];
        z *= factorial(m);
        i = j;
    }
    return z;
}

std::vector<int> hook_lengths(const Partition &p) {
    Partition c = conjugate(p);
    std::vector<int> h;
    for (int i = 0; i < (int)p.size(); ++i)
        for (int j = 0; j < p[i]; ++j)
            h.push_back(p[i] - j + c[j] - i - 1);
    return h;
}

std::vector<int> contents(const Partition &p) {
    std::vector<int> c;
    for (int i = 0; i < (int)p.size(); ++i)
        for (int j = 0; j < p[i]; ++j) c.push_back(j - i);
    return c;
}

Int content_sum(const Partition &p) {
    Int s = 0;
    for (int c : contents(p)) s += c;
    return s;
}

Int dimension(const Partition &p) {
    Int num = factorial(partition_size(p));
    for (int h : hook_lengths(p)) num /= h;
    return num;
}

// Character recursion on beta numbers. For the first-column hook set
// B = {lambda_i + l - i}, removing a border strip of length r moves one
// element b to b - r (which must be vacant); the sign is (-1)^{#elements
// strictly between}.
static Int character_impl(const std::vector<int> &beta, const Partition &mu,
                          std::size_t mi) {
    if (mi == mu.size()) return 1;
    int r = mu[mi];
    Int total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        int target = beta[i] - r;
        if (target < 0) continue;
        bool occupied = false;
        int between = 0;
        for (std::size_t j = 0; j < beta.size(); ++j) {
            if (j == i) continue;
            if (beta[j] == target) occupied = true;
            if (beta[j] > target && beta[j] < beta[i]) ++between;
        }
        if (occupied) continue;
        std::vector<int> nb = beta;
        nb[i] = target;
        std::sort(nb.begin(), nb.end());
        // strip leading 0,1,2,... to keep the key canonical
        std::size_t drop = 0;
        while (drop < nb.size() && nb[drop] == (int)drop) ++drop;
        std::vector<int> key(nb.begin() + drop, nb.end());
        for (auto &x : key) x -= (int)drop;
        Int sub = character_impl(key, mu, mi + 1);
        total += (between % 2 == 0) ? sub : -sub;
    }
    return total;
}

Int character(const Partition &lambda, const Partition &mu) {
    if (partition_size(lambda) != partition_size(mu))
        return 0;
    static std::map<std::pair<Partition, Partition>, Int> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find({lambda, mu});
        if (it != cache.end()) return it->second;
    }
    std::vector<int> beta(lambda.size());
    int l = (int)lambda.size();
    for (int i = 0; i < l; ++i) beta[i] = lambda[i] + l - 1 - i;
    std::sort(beta.begin(), beta.end());
    Int val = character_impl(beta, mu, 0);
    std::lock_guard<std::mutex> lk(mtx);
    cache.emplace(std::make_pair(lambda, mu), val);
    return val;
}

PSeries schur_in_powersums(const Partition &lambda, int weight_cap) {
    int n = partition_size(lambda);
    PSeries s(weight_cap);
    if (n > weight_cap) return s;
    for (const Partition &mu : partitions_of(n)) {
        Int chi = character(lambda, mu);
        if (chi == 0) continue;
        s += PSeries::monomial(HLaurent(Rat(chi) / Rat(z_mu(mu))),
                               monomial_from_parts(mu), weight_cap);
    }
    return s;
}

} // namespace kpcohft
