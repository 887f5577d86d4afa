#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace epiq {

/// Element id. Explicit lattices use dense indices 0..n-1; powerset lattices
/// use the bitmask of the atoms below the element (also dense: 0..2^n-1).
using Element = std::uint64_t;

class LatticeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite complete lattice.
///
/// Two carriers are supported. An explicit lattice is given by its element
/// labels and a partial order; join and meet tables are precomputed. A
/// powerset lattice over n atoms (n <= kMaxAtoms) is kept intensionally:
/// join is union, meet is intersection, and elements are atom bitmasks.
/// Values are immutable after construction.
class Lattice {
public:
    static constexpr std::size_t kMaxAtoms = 63;
    static constexpr std::uint64_t kEnumerationLimit = 4096;
    static constexpr std::size_t kMaxExplicit = 1024;

    /// Builds an explicit lattice. `leq_pairs` is closed reflexively and
    /// transitively; the result must be antisymmetric and have all binary
    /// joins and meets, otherwise LatticeError is thrown.
    static Lattice from_order(std::vector<std::string> labels,
                              const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs);

    /// Explicit lattice from a full boolean order matrix (row-major, n*n).
    static Lattice from_matrix(std::vector<std::string> labels, const std::vector<bool>& leq);

    static Lattice powerset(std::size_t atoms, std::vector<std::string> atom_labels = {});

    [[nodiscard]] bool is_powerset() const { return powerset_; }
    [[nodiscard]] std::uint64_t size() const;
    /// True when every element can be listed (size <= kEnumerationLimit).
    [[nodiscard]] bool enumerable() const { return size() <= kEnumerationLimit; }
    [[nodiscard]] bool contains(Element x) const;

    [[nodiscard]] Element bottom() const { return powerset_ ? 0 : bottom_; }
    [[nodiscard]] Element top() const;

    [[nodiscard]] bool leq(Element a, Element b) const;
    [[nodiscard]] Element join(Element a, Element b) const;
    [[nodiscard]] Element meet(Element a, Element b) const;
    [[nodiscard]] Element join(std::span<const Element> xs) const;
    [[nodiscard]] Element meet(std::span<const Element> xs) const;

    /// All elements in id order. Throws LatticeError when not enumerable.
    [[nodiscard]] std::vector<Element> elements() const;
    /// Atoms in id order.
    [[nodiscard]] std::vector<Element> atoms() const;
    /// For powerset lattices: number of atoms.
    [[nodiscard]] std::size_t atom_count() const { return atom_labels_.size(); }
    /// For powerset lattices: the atoms below x.
    [[nodiscard]] std::vector<Element> atoms_below(Element x) const;

    [[nodiscard]] std::string label(Element x) const;
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::vector<std::string>& atom_labels() const { return atom_labels_; }
    [[nodiscard]] std::optional<Element> find(const std::string& label) const;

    void check_element(Element x) const;

private:
    Lattice() = default;
    void build_tables();

    bool powerset_ = false;
    std::size_t n_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::string> atom_labels_;
    std::vector<std::uint8_t> leq_;
    std::vector<std::uint16_t> join_;
    std::vector<std::uint16_t> meet_;
    Element bottom_ = 0;
    Element top_ = 0;
};

using LatticePtr = std::shared_ptr<const Lattice>;

/// A total map between two lattices.
///
/// Tabulated maps store the image of every element; atomic maps (powerset
/// sources only) store atom images and are extended by joins, so they are
/// join-preserving by construction and never need tabulating.
class LatticeMap {
public:
    static LatticeMap from_table(LatticePtr source, LatticePtr target, std::vector<Element> table);
    static LatticeMap from_atom_images(LatticePtr source, LatticePtr target, std::vector<Element> images);
    static LatticeMap identity(LatticePtr lat);

    Element operator()(Element x) const;

    [[nodiscard]] const Lattice& source() const { return *source_; }
    [[nodiscard]] const Lattice& target() const { return *target_; }
    [[nodiscard]] const LatticePtr& source_ptr() const { return source_; }
    [[nodiscard]] const LatticePtr& target_ptr() const { return target_; }
    [[nodiscard]] bool atomic() const { return atomic_; }
    [[nodiscard]] const std::vector<Element>& atom_images() const { return images_; }
    [[nodiscard]] const std::vector<Element>& table() const { return table_; }

private:
    LatticePtr source_;
    LatticePtr target_;
    bool atomic_ = false;
    std::vector<Element> table_;
    std::vector<Element> images_;
};

Element join(const Lattice& lat, std::span<const Element> xs);

/// Exhaustive over all subsets when the source has at most 16 elements;
/// otherwise bottom preservation plus all binary joins, which is equivalent
/// for finite lattices. Atomic maps are join-preserving by construction.
bool is_join_preserving(const LatticeMap& f);

/// Right Galois adjoint evaluated at one point: the join of {a | f(a) <= b}.
/// Enumerates the source, or its atoms when the source is a large powerset.
Element right_adjoint_at(const LatticeMap& f, Element b);

/// Tabulated right adjoint. Throws LatticeError if f is not join-preserving
/// or the target is too large to tabulate.
LatticeMap right_adjoint(const LatticeMap& f);

/// Greatest element satisfying a predicate that is closed under joins and
/// downward closed: the join of all satisfying elements (of all satisfying
/// atoms in a powerset).
template <class Pred>
Element greatest_satisfying(const Lattice& lat, Pred&& pred)
{
    Element acc = lat.bottom();
    if (!lat.is_powerset()) {
        for (Element x : lat.elements())
            if (pred(x))
                acc = lat.join(acc, x);
    } else {
        for (Element a : lat.atoms())
            if (pred(a))
                acc = lat.join(acc, a);
    }
    return acc;
}

bool is_distributive(const Lattice& lat);
std::vector<Element> atoms(const Lattice& lat);
bool is_atomistic(const Lattice& lat);
std::vector<Element> downset(const Lattice& lat, Element x);
Lattice powerset_lattice(std::size_t n);

/// Elements c with a meet c = bottom and a join c = top.
std::vector<Element> complements(const Lattice& lat, Element a);

} // namespace epiq
