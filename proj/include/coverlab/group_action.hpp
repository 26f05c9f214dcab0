#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace coverlab {

/// Permutation of {0..t-1} as an image list: p[i] is the image of i.
using Perm = std::vector<std::uint8_t>;

Perm perm_identity(int t);
Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(x) = a(b(x))
Perm perm_inverse(const Perm& p);
bool perm_is_valid(const Perm& p);
int perm_fix_count(const Perm& p);

/// A finite permutation group acting on S = {0..t-1}, fully enumerated.
///
/// Element 0 is the identity; the rest follow in breadth-first order from
/// the generators with lexicographic tie-break inside each layer, so any
/// two runs enumerate identically. Immutable once built.
class GroupAction {
public:
    /// Closure of the generators. Throws CapacityError past max_elements.
    static GroupAction closure(const std::vector<Perm>& generators,
                               long long max_elements = 1000000,
                               std::string name = "custom");
    static GroupAction symmetric(int t);
    static GroupAction cyclic(int t);

    int set_size() const { return t_; }
    int order() const { return static_cast<int>(elems_.size()); }
    const std::string& name() const { return name_; }

    const Perm& element(int g) const { return elems_[g]; }
    int index_of(const Perm& p) const;  // -1 if not a member
    int identity() const { return 0; }
    bool is_identity(int g) const { return g == 0; }

    int mul(int a, int b) const;  // index of element(a)*element(b)
    int inv(int a) const { return inv_[a]; }
    /// Image of point s under element g.
    int apply(int g, int s) const { return elems_[g][s]; }

    int fix_count(int g) const { return fix_[g]; }
    /// Fix_G(S) = max over non-identity g of fix(g). Undefined for the
    /// trivial group (throws).
    int fixity() const;
    bool faithful() const { return fixity() < t_; }
    bool free() const { return fixity() == 0; }

private:
    int t_ = 0;
    std::string name_;
    std::vector<Perm> elems_;
    std::unordered_map<std::string, int> index_;  // packed image bytes -> index
    std::vector<int> inv_;
    std::vector<int> fix_;
    std::vector<std::uint16_t> mul_table_;  // filled when order^2 is small

    static std::string pack(const Perm& p);
    void finish();
};

} // namespace coverlab
