#include "epiq/lattice.hpp"

#include <algorithm>
#include <bit>

namespace epiq {

namespace {

std::string mask_label(const std::vector<std::string>& atom_labels, Element x)
{
    if (x == 0)
        return "{}";
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < atom_labels.size(); ++i) {
        if (!(x >> i & 1U))
            continue;
        if (!first)
            out += ",";
        out += atom_labels[i];
        first = false;
    }
    return out + "}";
}

} // namespace

Lattice Lattice::from_order(std::vector<std::string> labels,
                            const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs)
{
    const std::size_t n = labels.size();
    std::vector<bool> m(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
        m[i * n + i] = true;
    for (auto [a, b] : leq_pairs) {
        if (a >= n || b >= n)
            throw LatticeError("order pair (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
        m[a * n + b] = true;
    }
    // Warshall closure.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (m[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (m[k * n + j])
                        m[i * n + j] = true;
    return from_matrix(std::move(labels), m);
}

Lattice Lattice::from_matrix(std::vector<std::string> labels, const std::vector<bool>& leq)
{
    const std::size_t n = labels.size();
    if (n == 0)
        throw LatticeError("a lattice needs at least one element");
    if (n > kMaxExplicit)
        throw LatticeError("explicit lattice too large (" + std::to_string(n) + " elements)");
    if (leq.size() != n * n)
        throw LatticeError("order matrix has wrong size");
    Lattice lat;
    lat.n_ = n;
    lat.labels_ = std::move(labels);
    lat.leq_.resize(n * n);
    for (std::size_t i = 0; i < n * n; ++i)
        lat.leq_[i] = leq[i] ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!lat.leq_[i * n + i])
            throw LatticeError("order is not reflexive at " + lat.labels_[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && lat.leq_[i * n + j] && lat.leq_[j * n + i])
                throw LatticeError("order is not antisymmetric: " + lat.labels_[i] + " and " + lat.labels_[j]);
            if (lat.leq_[i * n + j])
                for (std::size_t k = 0; k < n; ++k)
                    if (lat.leq_[j * n + k] && !lat.leq_[i * n + k])
                        throw LatticeError("order is not transitive at " + lat.labels_[i] + "," + lat.labels_[j] +
                                           "," + lat.labels_[k]);
        }
    }
    lat.build_tables();
    return lat;
}

void Lattice::build_tables()
{
    const std::size_t n = n_;
    auto le = [&](std::size_t a, std::size_t b) { return leq_[a * n + b] != 0; };
    join_.assign(n * n, 0);
    meet_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            std::optional<std::size_t> lub;
            std::optional<std::size_t> glb;
            for (std::size_t c = 0; c < n; ++c) {
                if (le(a, c) && le(b, c) && (!lub || le(c, *lub)))
                    lub = c;
                if (le(c, a) && le(c, b) && (!glb || le(*glb, c)))
                    glb = c;
            }
            // The candidate must be below (above) every upper (lower) bound.
            for (std::size_t c = 0; c < n; ++c) {
                if (lub && le(a, c) && le(b, c) && !le(*lub, c))
                    lub.reset();
                if (glb && le(c, a) && le(c, b) && !le(c, *glb))
                    glb.reset();
            }
            if (!lub)
                throw LatticeError("no join for " + labels_[a] + " and " + labels_[b]);
            if (!glb)
                throw LatticeError("no meet for " + labels_[a] + " and " + labels_[b]);
            join_[a * n + b] = join_[b * n + a] = static_cast<std::uint16_t>(*lub);
            meet_[a * n + b] = meet_[b * n + a] = static_cast<std::uint16_t>(*glb);
        }
    }
    Element bot = 0;
    Element tp = 0;
    for (std::size_t c = 1; c < n; ++c) {
        bot = meet_[bot * n + c];
        tp = join_[tp * n + c];
    }
    bottom_ = bot;
    top_ = tp;
}

Lattice Lattice::powerset(std::size_t atoms, std::vector<std::string> atom_labels)
{
    if (atoms > kMaxAtoms)
        throw LatticeError("powerset over " + std::to_string(atoms) + " atoms exceeds the " +
                           std::to_string(kMaxAtoms) + "-atom capacity");
    if (atom_labels.empty())
        for (std::size_t i = 0; i < atoms; ++i)
            atom_labels.push_back(std::to_string(i));
    if (atom_labels.size() != atoms)
        throw LatticeError("powerset atom label count mismatch");
    Lattice lat;
    lat.powerset_ = true;
    lat.n_ = atoms;
    lat.atom_labels_ = std::move(atom_labels);
    return lat;
}

std::uint64_t Lattice::size() const
{
    return powerset_ ? (std::uint64_t{1} << n_) : n_;
}

Element Lattice::top() const
{
    return powerset_ ? ((std::uint64_t{1} << n_) - 1) : top_;
}

bool Lattice::contains(Element x) const
{
    return x < size();
}

void Lattice::check_element(Element x) const
{
    if (!contains(x))
        throw LatticeError("element id " + std::to_string(x) + " out of range");
}

bool Lattice::leq(Element a, Element b) const
{
    if (powerset_)
        return (a & ~b) == 0;
    return leq_[a * n_ + b] != 0;
}

Element Lattice::join(Element a, Element b) const
{
    if (powerset_)
        return a | b;
    return join_[a * n_ + b];
}

Element Lattice::meet(Element a, Element b) const
{
    if (powerset_)
        return a & b;
    return meet_[a * n_ + b];
}

Element Lattice::join(std::span<const Element> xs) const
{
    Element acc = bottom();
    for (Element x : xs)
        acc = join(acc, x);
    return acc;
}

Element Lattice::meet(std::span<const Element> xs) const
{
    Element acc = top();
    for (Element x : xs)
        acc = meet(acc, x);
    return acc;
}

std::vector<Element> Lattice::elements() const
{
    if (!enumerable())
        throw LatticeError("lattice with " + std::to_string(n_) + " atoms is too large to enumerate");
    std::vector<Element> out(size());
    for (Element i = 0; i < out.size(); ++i)
        out[i] = i;
    return out;
}

std::vector<Element> Lattice::atoms() const
{
    std::vector<Element> out;
    if (powerset_) {
        for (std::size_t i = 0; i < n_; ++i)
            out.push_back(Element{1} << i);
        return out;
    }
    for (Element x = 0; x < n_; ++x) {
        if (x == bottom_)
            continue;
        bool atom = true;
        for (Element y = 0; y < n_ && atom; ++y)
            if (y != bottom_ && y != x && leq(y, x))
                atom = false;
        if (atom)
            out.push_back(x);
    }
    return out;
}

std::vector<Element> Lattice::atoms_below(Element x) const
{
    std::vector<Element> out;
    if (powerset_) {
        while (x != 0) {
            Element low = x & (~x + 1);
            out.push_back(low);
            x &= x - 1;
        }
        return out;
    }
    for (Element a : atoms())
        if (leq(a, x))
            out.push_back(a);
    return out;
}

std::string Lattice::label(Element x) const
{
    if (powerset_)
        return mask_label(atom_labels_, x);
    return x < labels_.size() ? labels_[x] : "?" + std::to_string(x);
}

std::optional<Element> Lattice::find(const std::string& label) const
{
    if (powerset_) {
        for (std::size_t i = 0; i < atom_labels_.size(); ++i)
            if (atom_labels_[i] == label)
                return Element{1} << i;
        return std::nullopt;
    }
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label)
            return i;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

LatticeMap LatticeMap::from_table(LatticePtr source, LatticePtr target, std::vector<Element> table)
{
    if (!source->enumerable())
        throw LatticeError("cannot tabulate a map on a non-enumerable lattice");
    if (table.size() != source->size())
        throw LatticeError("map table has " + std::to_string(table.size()) + " entries, expected " +
                           std::to_string(source->size()));
    for (Element y : table)
        target->check_element(y);
    LatticeMap f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.table_ = std::move(table);
    return f;
}

LatticeMap LatticeMap::from_atom_images(LatticePtr source, LatticePtr target, std::vector<Element> images)
{
    if (!source->is_powerset())
        throw LatticeError("atom images require a powerset source");
    if (images.size() != source->atom_count())
        throw LatticeError("atom image count mismatch");
    for (Element y : images)
        target->check_element(y);
    LatticeMap f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.atomic_ = true;
    f.images_ = std::move(images);
    return f;
}

LatticeMap LatticeMap::identity(LatticePtr lat)
{
    if (lat->is_powerset()) {
        std::vector<Element> images = lat->atoms();
        return from_atom_images(lat, lat, std::move(images));
    }
    return from_table(lat, lat, lat->elements());
}

Element LatticeMap::operator()(Element x) const
{
    if (!atomic_)
        return table_.at(x);
    Element acc = target_->bottom();
    std::size_t i = 0;
    while (x != 0) {
        if (x & 1U)
            acc = target_->join(acc, images_[i]);
        x >>= 1U;
        ++i;
    }
    return acc;
}

Element join(const Lattice& lat, std::span<const Element> xs)
{
    return lat.join(xs);
}

bool is_join_preserving(const LatticeMap& f)
{
    if (f.atomic())
        return true;
    const Lattice& src = f.source();
    const Lattice& tgt = f.target();
    const auto elems = src.elements();
    if (f(src.bottom()) != tgt.bottom())
        return false;
    if (elems.size() <= 16) {
        const std::uint32_t subsets = 1U << elems.size();
        for (std::uint32_t s = 1; s < subsets; ++s) {
            Element js = src.bottom();
            Element jf = tgt.bottom();
            for (std::size_t i = 0; i < elems.size(); ++i)
                if (s >> i & 1U) {
                    js = src.join(js, elems[i]);
                    jf = tgt.join(jf, f(elems[i]));
                }
            if (f(js) != jf)
                return false;
        }
        return true;
    }
    for (Element a : elems)
        for (Element b : elems)
            if (f(src.join(a, b)) != tgt.join(f(a), f(b)))
                return false;
    return true;
}

Element right_adjoint_at(const LatticeMap& f, Element b)
{
    const Lattice& tgt = f.target();
    return greatest_satisfying(f.source(), [&](Element a) { return tgt.leq(f(a), b); });
}

LatticeMap right_adjoint(const LatticeMap& f)
{
    if (!is_join_preserving(f))
        throw LatticeError("right adjoint requested for a map that does not preserve joins");
    const Lattice& tgt = f.target();
    if (!tgt.enumerable())
        throw LatticeError("target too large to tabulate the right adjoint; use right_adjoint_at");
    std::vector<Element> table;
    table.reserve(tgt.size());
    for (Element b : tgt.elements())
        table.push_back(right_adjoint_at(f, b));
    return LatticeMap::from_table(f.target_ptr(), f.source_ptr(), std::move(table));
}

bool is_distributive(const Lattice& lat)
{
    if (lat.is_powerset())
        return true;
    const auto el = lat.elements();
    for (Element a : el)
        for (Element b : el)
            for (Element c : el)
                if (lat.meet(a, lat.join(b, c)) != lat.join(lat.meet(a, b), lat.meet(a, c)))
                    return false;
    return true;
}

std::vector<Element> atoms(const Lattice& lat)
{
    return lat.atoms();
}

bool is_atomistic(const Lattice& lat)
{
    if (lat.is_powerset())
        return true;
    for (Element x : lat.elements()) {
        const auto below = lat.atoms_below(x);
        if (lat.join(below) != x)
            return false;
    }
    return true;
}

std::vector<Element> downset(const Lattice& lat, Element x)
{
    std::vector<Element> out;
    if (lat.is_powerset()) {
        if (std::popcount(x) > 16)
            throw LatticeError("downset too large to enumerate");
        // Enumerate submasks in increasing order.
        Element sub = 0;
        do {
            out.push_back(sub);
            sub = (sub - x) & x;
        } while (sub != 0);
        std::sort(out.begin(), out.end());
        return out;
    }
    for (Element y : lat.elements())
        if (lat.leq(y, x))
            out.push_back(y);
    return out;
}

Lattice powerset_lattice(std::size_t n)
{
    return Lattice::powerset(n);
}

std::vector<Element> complements(const Lattice& lat, Element a)
{
    if (lat.is_powerset())
        return {lat.top() & ~a};
    std::vector<Element> out;
    for (Element c : lat.elements())
        if (lat.meet(a, c) == lat.bottom() && lat.join(a, c) == lat.top())
            out.push_back(c);
    return out;
}

} // namespace epiq
