#include "coverlab/group_action.hpp"

#include <algorithm>
#include <numeric>

#include "coverlab/errors.hpp"

namespace coverlab {

Perm perm_identity(int t) {
    Perm p(t);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint8_t>(i);
    return r;
}

bool perm_is_valid(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    for (std::uint8_t v : p) {
        if (v >= p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

int perm_fix_count(const Perm& p) {
    int c = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == i) ++c;
    return c;
}

std::string GroupAction::pack(const Perm& p) {
    return std::string(p.begin(), p.end());
}

GroupAction GroupAction::closure(const std::vector<Perm>& generators,
                                 long long max_elements, std::string name) {
    if (generators.empty()) throw ValidationError("closure: no generators");
    const std::size_t t = generators[0].size();
    if (t == 0) throw ValidationError("closure: empty permutation");
    for (const Perm& g : generators) {
        if (g.size() != t)
            throw ValidationError("closure: generators act on different set sizes");
        if (!perm_is_valid(g))
            throw ValidationError("closure: image list is not a permutation");
    }

    GroupAction a;
    a.t_ = static_cast<int>(t);
    a.name_ = std::move(name);
    a.elems_.push_back(perm_identity(a.t_));
    a.index_.emplace(pack(a.elems_[0]), 0);

    std::vector<Perm> frontier = {a.elems_[0]};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const Perm& g : frontier) {
            for (const Perm& h : generators) {
                Perm p = perm_compose(g, h);
                if (a.index_.count(pack(p))) continue;
                if (static_cast<long long>(a.elems_.size()) >= max_elements)
                    throw CapacityError("closure exceeds the element guard");
                a.index_.emplace(pack(p), -1);  // reserve; index assigned below
                next.push_back(std::move(p));
            }
        }
        std::sort(next.begin(), next.end());
        for (Perm& p : next) {
            a.index_[pack(p)] = static_cast<int>(a.elems_.size());
            a.elems_.push_back(std::move(p));
        }
        frontier = std::vector<Perm>(a.elems_.end() - next.size(), a.elems_.end());
    }

    a.finish();
    return a;
}

GroupAction GroupAction::symmetric(int t) {
    if (t < 1) throw ValidationError("symmetric: set size must be >= 1");
    std::vector<Perm> gens;
    if (t >= 2) {
        Perm swap01 = perm_identity(t);
        std::swap(swap01[0], swap01[1]);
        gens.push_back(swap01);
        Perm cycle(t);
        for (int i = 0; i < t; ++i) cycle[i] = static_cast<std::uint8_t>((i + 1) % t);
        gens.push_back(cycle);
    } else {
        gens.push_back(perm_identity(1));
    }
    return closure(gens, 4000000, "sym:" + std::to_string(t));
}

GroupAction GroupAction::cyclic(int t) {
    if (t < 1) throw ValidationError("cyclic: set size must be >= 1");
    Perm cycle(t);
    for (int i = 0; i < t; ++i) cycle[i] = static_cast<std::uint8_t>((i + 1) % t);
    return closure({cycle}, 1000000, "cyc:" + std::to_string(t));
}

void GroupAction::finish() {
    const int m = order();
    inv_.resize(m);
    fix_.resize(m);
    for (int i = 0; i < m; ++i) {
        inv_[i] = index_of(perm_inverse(elems_[i]));
        fix_[i] = perm_fix_count(elems_[i]);
    }
    if (static_cast<long long>(m) * m <= (1 << 22)) {
        mul_table_.resize(static_cast<std::size_t>(m) * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                mul_table_[static_cast<std::size_t>(i) * m + j] =
                    static_cast<std::uint16_t>(index_of(perm_compose(elems_[i], elems_[j])));
    }
}

int GroupAction::index_of(const Perm& p) const {
    auto it = index_.find(pack(p));
    return it == index_.end() ? -1 : it->second;
}

int GroupAction::mul(int a, int b) const {
    if (!mul_table_.empty())
        return mul_table_[static_cast<std::size_t>(a) * order() + b];
    return index_of(perm_compose(elems_[a], elems_[b]));
}

int GroupAction::fixity() const {
    if (order() < 2)
        throw ValidationError("fixity: undefined for the trivial group");
    int best = 0;
    for (int g = 1; g < order(); ++g) best = std::max(best, fix_[g]);
    return best;
}

} // namespace coverlab
