#ifndef TCONIC_LATTICE_HPP
#define TCONIC_LATTICE_HPP

// Picard-lattice combinatorics: the 27 lines of a cubic surface and the 56
// (-1)-curves of a degree-2 del Pezzo, the E6 root system and its Weyl
// group, double sixes, the 12 distinguished roots fixing G12/G34/G56, the
// order-192 group they generate, and all orbit censuses.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>
#include <optional>

namespace tconic::lattice {

struct PicClass {
    int mode = 6;                    // 6: cubic surface, 7: del Pezzo degree 2
    int a = 0;
    std::array<int, 7> b{};          // entries 0..mode-1 meaningful

    bool operator==(const PicClass& o) const { return mode == o.mode && a == o.a && b == o.b; }
    bool operator<(const PicClass& o) const {
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

int pairing(const PicClass& u, const PicClass& v);
PicClass canonical_class(int mode);                  // omega = -(3;1,...,1)
bool is_minus_one_class(const PicClass& c);
bool is_root(const PicClass& c);                     // 27-mode: (x,x)=-2, (x,omega)=0

// ---- labeled configurations -------------------------------------------

struct Lines27 {
    std::vector<PicClass> classes;        // 27 entries
    std::vector<std::string> names;       // "E1".."E6", "G12".."G56", "C1".."C6"
    std::array<std::array<int, 27>, 27> meet;   // pairing values

    int index_of(const std::string& name) const;
    int index_of(const PicClass& c) const;
};
const Lines27& lines27();

struct Curves56 {
    std::vector<PicClass> classes;        // 56 entries, mode 7
    std::vector<std::string> names;       // "E1".."E7","K1".."K7","G12".."G67","C12".."C67"
    std::vector<int> partner;             // C + partner(C) = -K
    int index_of(const std::string& name) const;
};
const Curves56& curves56();

// Lemma-level D assignments: D1+ = K7, D1- = E7, D2+ = G12, D2- = C12,
// D3+ = G34, D3- = C34, D4+ = G56, D4- = C56.
std::map<std::string, std::string> d_assignments();

// blow-down of E7: 56-mode class with c.E7 = 0 -> 27-mode class
PicClass blow_down(const PicClass& c);

// ---- roots and reflections ---------------------------------------------

std::vector<PicClass> roots_e6();                    // all 72

struct WeylElem {
    std::array<std::uint8_t, 27> perm{};             // image of line i

    static WeylElem identity();
    WeylElem then(const WeylElem& o) const;          // apply *this first, then o
    WeylElem inverse() const;
    bool operator==(const WeylElem& o) const { return perm == o.perm; }
    bool operator<(const WeylElem& o) const { return perm < o.perm; }
    int fixed_count() const;
    int order() const;
};

WeylElem reflection(const PicClass& root);           // throws on non-root

// lattice image of a line class under the reflection at x
PicClass reflect_class(const PicClass& v, const PicClass& x);

// ---- double sixes -------------------------------------------------------

struct DoubleSix {
    std::array<std::pair<int, int>, 6> swaps;        // six swapped line pairs
    std::array<int, 6> tuple_a, tuple_b;             // the two skew sextuples
    WeylElem elem;
};

std::vector<DoubleSix> double_sixes();               // all 36
bool is_c16(const WeylElem& w);                      // order 2, >= 15 fixed lines

// ---- the twelve distinguished roots -------------------------------------

// roots whose reflections fix G12, G34, G56; canonical representative per
// +- pair, in the fixed listing order
std::vector<PicClass> stabilizer_roots();

// adjacency of a root base under the pairing; for {x3, x7, x11, x12} this is
// the D4 star with x12 in the middle
struct Dynkin {
    std::vector<int> center;                        // indices with degree 3
    std::vector<std::pair<int, int>> edges;
};
Dynkin dynkin(const std::vector<PicClass>& base);

// ---- group generation and orbits ----------------------------------------

struct Group {
    std::vector<WeylElem> elements;
    size_t order() const { return elements.size(); }
    bool contains(const WeylElem& w) const;
};

Group generate_group(const std::vector<WeylElem>& gens, size_t cap = 200000);

struct OrbitPartition {
    // each orbit is a sorted list of ground-set indices
    std::vector<std::vector<int>> orbits;
    std::vector<int> orbit_of;                      // ground index -> orbit id
};

OrbitPartition orbits_on_lines(const Group& g);
// ground set: unordered pairs {i<j} indexed by pair_index(i,j)
OrbitPartition orbits_on_pairs(const Group& g);

int pair_index(int i, int j);                        // 0..350
std::pair<int, int> pair_from_index(int k);

// ---- census tables -------------------------------------------------------

struct CensusRow {
    std::string kind;        // descriptive tag
    int component_count;
    int size_per_component;
};

struct Yf2Census {
    std::vector<CensusRow> pair_components;   // the 30 rows over 378 pairs
    std::vector<CensusRow> family_components; // the 10 rows over 63 families
    int total_pairs() const;
    int total_families() const;
};

// Built from the order-192 group's orbit data plus the e1 adjunction.
Yf2Census yf2_component_census();

// classification of each pair orbit of the order-192 group
struct PairOrbitInfo {
    std::vector<int> members;    // pair indices
    std::string kind;            // e.g. "AA-4", "AA-24", "AB-meet", "G12xA", "GG"
    int incidence;               // constant pairing value across the orbit
};
std::vector<PairOrbitInfo> classified_pair_orbits();

// the three 8-orbits keyed by the G-line their members intersect
std::map<std::string, std::vector<int>> abc_orbits();

// order-192 structure: normal abelian subgroup of order 8 with S4 quotient
// acting faithfully on the four incident pairs p1..p4
struct GroupStructure {
    bool order_192 = false;
    bool kernel_order_8 = false;
    bool kernel_abelian = false;
    bool quotient_s4 = false;
    bool ok() const { return order_192 && kernel_order_8 && kernel_abelian && quotient_s4; }
};
GroupStructure verify_s4_z2_structure();

} // namespace tconic::lattice

#endif
