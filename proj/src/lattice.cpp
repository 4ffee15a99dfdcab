#include "tconic/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>
#include <unordered_map>

namespace tconic::lattice {

int pairing(const PicClass& u, const PicClass& v) {
    if (u.mode != v.mode) throw std::invalid_argument("pairing: mode mismatch");
    int s = u.a * v.a;
    for (int i = 0; i < u.mode; ++i) s -= u.b[size_t(i)] * v.b[size_t(i)];
    return s;
}

PicClass canonical_class(int mode) {
    PicClass w;
    w.mode = mode;
    w.a = -3;
    for (int i = 0; i < mode; ++i) w.b[size_t(i)] = -1;
    return w;
}

bool is_minus_one_class(const PicClass& c) {
    PicClass mk = canonical_class(c.mode);
    mk.a = -mk.a;
    for (int i = 0; i < c.mode; ++i) mk.b[size_t(i)] = -mk.b[size_t(i)];
    return pairing(c, c) == -1 && pairing(c, mk) == 1;
}

bool is_root(const PicClass& c) {
    return pairing(c, c) == -2 && pairing(c, canonical_class(c.mode)) == 0;
}

namespace {

PicClass cls6(int a, std::array<int, 6> b) {
    PicClass c;
    c.mode = 6;
    c.a = a;
    for (int i = 0; i < 6; ++i) c.b[size_t(i)] = b[size_t(i)];
    return c;
}

PicClass cls7(int a, std::array<int, 7> b) {
    PicClass c;
    c.mode = 7;
    c.a = a;
    c.b = b;
    return c;
}

Lines27 build_lines27() {
    Lines27 L;
    // E^i = [E_i]: a=0, b_i = -1
    for (int i = 0; i < 6; ++i) {
        std::array<int, 6> b{};
        b[size_t(i)] = -1;
        L.classes.push_back(cls6(0, b));
        L.names.push_back("E" + std::to_string(i + 1));
    }
    // G^{ij} = (1; e_i + e_j)
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            std::array<int, 6> b{};
            b[size_t(i)] = 1;
            b[size_t(j)] = 1;
            L.classes.push_back(cls6(1, b));
            L.names.push_back("G" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    // C^i = (2; 1,...,1 with b_i = 0)
    for (int i = 0; i < 6; ++i) {
        std::array<int, 6> b{1, 1, 1, 1, 1, 1};
        b[size_t(i)] = 0;
        L.classes.push_back(cls6(2, b));
        L.names.push_back("C" + std::to_string(i + 1));
    }
    for (int i = 0; i < 27; ++i)
        for (int j = 0; j < 27; ++j)
            L.meet[size_t(i)][size_t(j)] = pairing(L.classes[size_t(i)], L.classes[size_t(j)]);
    return L;
}

Curves56 build_curves56() {
    Curves56 C;
    // E^i
    for (int i = 0; i < 7; ++i) {
        std::array<int, 7> b{};
        b[size_t(i)] = -1;
        C.classes.push_back(cls7(0, b));
        C.names.push_back("E" + std::to_string(i + 1));
    }
    // K^i = (3; 1,...,1) + e_i
    for (int i = 0; i < 7; ++i) {
        std::array<int, 7> b{1, 1, 1, 1, 1, 1, 1};
        b[size_t(i)] = 2;
        C.classes.push_back(cls7(3, b));
        C.names.push_back("K" + std::to_string(i + 1));
    }
    // G^{ij}
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) {
            std::array<int, 7> b{};
            b[size_t(i)] = 1;
            b[size_t(j)] = 1;
            C.classes.push_back(cls7(1, b));
            C.names.push_back("G" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    // C^{ij}
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) {
            std::array<int, 7> b{1, 1, 1, 1, 1, 1, 1};
            b[size_t(i)] = 0;
            b[size_t(j)] = 0;
            C.classes.push_back(cls7(2, b));
            C.names.push_back("C" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    // anticanonical partner: C + C' = -K = (3;1,...,1)
    C.partner.assign(56, -1);
    for (int i = 0; i < 56; ++i) {
        PicClass want;
        want.mode = 7;
        want.a = 3 - C.classes[size_t(i)].a;
        for (int k = 0; k < 7; ++k) want.b[size_t(k)] = 1 - C.classes[size_t(i)].b[size_t(k)];
        for (int j = 0; j < 56; ++j)
            if (C.classes[size_t(j)] == want) { C.partner[size_t(i)] = j; break; }
        if (C.partner[size_t(i)] < 0) throw std::logic_error("curves56: missing partner");
    }
    return C;
}

} // namespace

int Lines27::index_of(const std::string& name) const {
    for (int i = 0; i < 27; ++i)
        if (names[size_t(i)] == name) return i;
    throw std::invalid_argument("unknown line label " + name);
}

int Lines27::index_of(const PicClass& c) const {
    for (int i = 0; i < 27; ++i)
        if (classes[size_t(i)] == c) return i;
    return -1;
}

int Curves56::index_of(const std::string& name) const {
    for (int i = 0; i < 56; ++i)
        if (names[size_t(i)] == name) return i;
    throw std::invalid_argument("unknown curve label " + name);
}

const Lines27& lines27() {
    static const Lines27 L = build_lines27();
    return L;
}

const Curves56& curves56() {
    static const Curves56 C = build_curves56();
    return C;
}

std::map<std::string, std::string> d_assignments() {
    return {
        {"D1+", "K7"}, {"D1-", "E7"},
        {"D2+", "G12"}, {"D2-", "C12"},
        {"D3+", "G34"}, {"D3-", "C34"},
        {"D4+", "G56"}, {"D4-", "C56"},
    };
}

PicClass blow_down(const PicClass& c) {
    if (c.mode != 7) throw std::invalid_argument("blow_down expects a 56-mode class");
    PicClass e7;
    e7.mode = 7;
    e7.b[6] = -1;
    if (pairing(c, e7) != 0) throw std::invalid_argument("blow_down: class meets E7");
    PicClass r;
    r.mode = 6;
    r.a = c.a;
    for (int i = 0; i < 6; ++i) r.b[size_t(i)] = c.b[size_t(i)];
    return r;
}

std::vector<PicClass> roots_e6() {
    std::vector<PicClass> out;
    // E^i - E^j
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (i == j) continue;
            std::array<int, 6> b{};
            b[size_t(i)] = -1;
            b[size_t(j)] = 1;
            out.push_back(cls6(0, b));
        }
    // +-([H] - E^i - E^j - E^k)
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k) {
                std::array<int, 6> b{};
                b[size_t(i)] = b[size_t(j)] = b[size_t(k)] = 1;
                out.push_back(cls6(1, b));
                std::array<int, 6> nb{};
                nb[size_t(i)] = nb[size_t(j)] = nb[size_t(k)] = -1;
                out.push_back(cls6(-1, nb));
            }
    // +-(2; 1,...,1)
    out.push_back(cls6(2, {1, 1, 1, 1, 1, 1}));
    out.push_back(cls6(-2, {-1, -1, -1, -1, -1, -1}));
    return out;
}

WeylElem WeylElem::identity() {
    WeylElem w;
    for (int i = 0; i < 27; ++i) w.perm[size_t(i)] = std::uint8_t(i);
    return w;
}

WeylElem WeylElem::then(const WeylElem& o) const {
    WeylElem r;
    for (int i = 0; i < 27; ++i) r.perm[size_t(i)] = o.perm[perm[size_t(i)]];
    return r;
}

WeylElem WeylElem::inverse() const {
    WeylElem r;
    for (int i = 0; i < 27; ++i) r.perm[perm[size_t(i)]] = std::uint8_t(i);
    return r;
}

int WeylElem::fixed_count() const {
    int n = 0;
    for (int i = 0; i < 27; ++i)
        if (perm[size_t(i)] == i) ++n;
    return n;
}

int WeylElem::order() const {
    WeylElem cur = *this;
    WeylElem id = identity();
    int n = 1;
    while (!(cur == id)) {
        cur = cur.then(*this);
        ++n;
        if (n > 100000) throw std::logic_error("order runaway");
    }
    return n;
}

PicClass reflect_class(const PicClass& v, const PicClass& x) {
    int p = pairing(v, x);
    PicClass r = v;
    r.a += p * x.a;
    for (int i = 0; i < v.mode; ++i) r.b[size_t(i)] += p * x.b[size_t(i)];
    return r;
}

WeylElem reflection(const PicClass& root) {
    if (!is_root(root)) throw std::invalid_argument("reflection at a non-root");
    const Lines27& L = lines27();
    WeylElem w;
    for (int i = 0; i < 27; ++i) {
        int img = L.index_of(reflect_class(L.classes[size_t(i)], root));
        if (img < 0) throw std::logic_error("reflection image is not a line class");
        w.perm[size_t(i)] = std::uint8_t(img);
    }
    return w;
}

std::vector<DoubleSix> double_sixes() {
    std::vector<DoubleSix> out;
    std::set<WeylElem> seen;
    for (const auto& x : roots_e6()) {
        WeylElem w = reflection(x);
        if (seen.count(w)) continue;
        seen.insert(w);
        DoubleSix d;
        d.elem = w;
        int k = 0;
        for (int i = 0; i < 27; ++i) {
            int j = w.perm[size_t(i)];
            if (j > i) {
                if (k >= 6) throw std::logic_error("double six with more than six swaps");
                d.swaps[size_t(k++)] = {i, j};
            }
        }
        if (k != 6) throw std::logic_error("reflection is not a double six transformation");
        // split the six swapped pairs into the two skew sextuples: anchor at
        // the first pair's first line; the same-tuple member of every other
        // pair is the one skew to the anchor
        const Lines27& L = lines27();
        d.tuple_a[0] = d.swaps[0].first;
        d.tuple_b[0] = d.swaps[0].second;
        for (int m = 1; m < 6; ++m) {
            auto [p, q] = d.swaps[size_t(m)];
            if (L.meet[size_t(d.tuple_a[0])][size_t(p)] == 0) {
                d.tuple_a[size_t(m)] = p;
                d.tuple_b[size_t(m)] = q;
            } else {
                d.tuple_a[size_t(m)] = q;
                d.tuple_b[size_t(m)] = p;
            }
        }
        out.push_back(d);
    }
    if (out.size() != 36) throw std::logic_error("expected 36 double sixes");
    return out;
}

bool is_c16(const WeylElem& w) {
    return !(w == WeylElem::identity()) && w.order() == 2 && w.fixed_count() >= 15;
}

std::vector<PicClass> stabilizer_roots() {
    const Lines27& L = lines27();
    int g12 = L.index_of("G12"), g34 = L.index_of("G34"), g56 = L.index_of("G56");
    std::vector<PicClass> out;
    for (const auto& x : roots_e6()) {
        // canonical representative of the +-pair
        bool canon = x.a > 0;
        if (x.a == 0) {
            for (int i = 0; i < 6; ++i) {
                if (x.b[size_t(i)] != 0) { canon = x.b[size_t(i)] < 0; break; }
            }
        }
        if (!canon) continue;
        WeylElem w = reflection(x);
        if (w.perm[size_t(g12)] == g12 && w.perm[size_t(g34)] == g34 && w.perm[size_t(g56)] == g56)
            out.push_back(x);
    }
    return out;
}

Dynkin dynkin(const std::vector<PicClass>& base) {
    Dynkin d;
    std::vector<int> degree(base.size(), 0);
    for (size_t i = 0; i < base.size(); ++i)
        for (size_t j = i + 1; j < base.size(); ++j)
            if (pairing(base[i], base[j]) != 0) {
                d.edges.emplace_back(int(i), int(j));
                ++degree[i];
                ++degree[j];
            }
    for (size_t i = 0; i < base.size(); ++i)
        if (degree[i] >= 3) d.center.push_back(int(i));
    return d;
}

namespace {

struct PermHash {
    size_t operator()(const std::array<std::uint8_t, 27>& p) const {
        size_t h = 1469598103934665603ULL;
        for (auto v : p) {
            h ^= v;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

} // namespace

Group generate_group(const std::vector<WeylElem>& gens, size_t cap) {
    Group g;
    std::unordered_set<std::array<std::uint8_t, 27>, PermHash> seen;
    std::vector<WeylElem> frontier{WeylElem::identity()};
    seen.insert(frontier[0].perm);
    g.elements.push_back(frontier[0]);
    while (!frontier.empty()) {
        std::vector<WeylElem> next;
        for (const auto& w : frontier)
            for (const auto& s : gens) {
                WeylElem c = w.then(s);
                if (seen.insert(c.perm).second) {
                    g.elements.push_back(c);
                    next.push_back(c);
                    if (g.elements.size() > cap)
                        throw std::runtime_error("group closure exceeded cap");
                }
            }
        frontier = std::move(next);
    }
    std::sort(g.elements.begin(), g.elements.end());
    return g;
}

bool Group::contains(const WeylElem& w) const {
    return std::binary_search(elements.begin(), elements.end(), w);
}

OrbitPartition orbits_on_lines(const Group& g) {
    OrbitPartition p;
    p.orbit_of.assign(27, -1);
    for (int i = 0; i < 27; ++i) {
        if (p.orbit_of[size_t(i)] >= 0) continue;
        std::set<int> orb;
        for (const auto& w : g.elements) orb.insert(w.perm[size_t(i)]);
        int id = int(p.orbits.size());
        p.orbits.emplace_back(orb.begin(), orb.end());
        for (int x : orb) p.orbit_of[size_t(x)] = id;
    }
    return p;
}

int pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    // index of {i<j} among C(27,2) pairs in lex order
    return i * 27 - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> pair_from_index(int k) {
    for (int i = 0; i < 27; ++i) {
        int row = 26 - i;
        if (k < row) return {i, i + 1 + k};
        k -= row;
    }
    throw std::out_of_range("pair_from_index");
}

OrbitPartition orbits_on_pairs(const Group& g) {
    OrbitPartition p;
    p.orbit_of.assign(351, -1);
    for (int k = 0; k < 351; ++k) {
        if (p.orbit_of[size_t(k)] >= 0) continue;
        auto [i, j] = pair_from_index(k);
        std::set<int> orb;
        for (const auto& w : g.elements)
            orb.insert(pair_index(w.perm[size_t(i)], w.perm[size_t(j)]));
        int id = int(p.orbits.size());
        p.orbits.emplace_back(orb.begin(), orb.end());
        for (int x : orb) p.orbit_of[size_t(x)] = id;
    }
    return p;
}

namespace {

Group order192_group() {
    std::vector<WeylElem> gens;
    for (const auto& x : stabilizer_roots()) gens.push_back(reflection(x));
    return generate_group(gens);
}

} // namespace

std::map<std::string, std::vector<int>> abc_orbits() {
    const Lines27& L = lines27();
    Group g = order192_group();
    OrbitPartition lo = orbits_on_lines(g);
    std::map<std::string, std::vector<int>> out;
    std::vector<std::string> gnames{"G12", "G34", "G56"};
    for (const auto& orb : lo.orbits) {
        if (orb.size() == 1) continue;
        if (orb.size() != 8) throw std::logic_error("unexpected line orbit size");
        // which G-line do all members intersect?
        std::string key;
        for (const auto& gn : gnames) {
            int gi = L.index_of(gn);
            bool all = true;
            for (int x : orb)
                if (L.meet[size_t(x)][size_t(gi)] != 1) { all = false; break; }
            if (all) { key = gn; break; }
        }
        if (key.empty()) throw std::logic_error("8-orbit intersects no fixed G-line uniformly");
        out[key] = orb;
    }
    if (out.size() != 3) throw std::logic_error("expected three 8-orbits");
    return out;
}

std::vector<PairOrbitInfo> classified_pair_orbits() {
    const Lines27& L = lines27();
    Group g = order192_group();
    OrbitPartition po = orbits_on_pairs(g);
    auto abc = abc_orbits();

    std::map<std::string, std::string> orbit_letter{{"G12", "A"}, {"G34", "B"}, {"G56", "C"}};
    auto class_of_line = [&](int line) -> std::string {
        for (auto& [key, orb] : abc)
            if (std::find(orb.begin(), orb.end(), line) != orb.end())
                return orbit_letter.at(key);        // "A", "B", or "C"
        return L.names[size_t(line)];               // one of G12/G34/G56
    };

    std::vector<PairOrbitInfo> out;
    for (const auto& orb : po.orbits) {
        PairOrbitInfo info;
        info.members = orb;
        auto [i0, j0] = pair_from_index(orb[0]);
        int inc = L.meet[size_t(i0)][size_t(j0)];
        for (int k : orb) {
            auto [i, j] = pair_from_index(k);
            if (L.meet[size_t(i)][size_t(j)] != inc)
                throw std::logic_error("incidence not constant on a pair orbit");
        }
        info.incidence = inc;
        std::string ci = class_of_line(i0), cj = class_of_line(j0);
        bool gi = ci.size() > 1, gj = cj.size() > 1;    // "G12" vs "A"
        if (gi && gj) {
            info.kind = "GG";
        } else if (gi || gj) {
            info.kind = "{" + (gi ? ci : cj) + "}x" + (gi ? cj : ci);
        } else {
            std::string a = ci, b = cj;
            if (a > b) std::swap(a, b);
            info.kind = a + b + (orb.size() == 4 ? "-4" : orb.size() == 24 ? "-24"
                                : (inc == 1 ? "-meet" : "-skew"));
        }
        out.push_back(std::move(info));
    }
    return out;
}

Yf2Census yf2_component_census() {
    auto orbits = classified_pair_orbits();
    Yf2Census c;
    int n24 = 0, n4 = 0, n32 = 0, n8 = 0, n1 = 0;
    for (auto& o : orbits) {
        if (o.kind == "GG") ++n1;
        else if (o.kind.substr(0, 1) == "{") ++n8;
        else if (o.members.size() == 4) ++n4;
        else if (o.members.size() == 24) ++n24;
        else if (o.members.size() == 32) ++n32;
        else throw std::logic_error("unexpected pair orbit size");
    }
    // e1 adjunction: the double tangent over the plane-E1 component pairs
    // with each of the three 8-orbits (three more 8-point components) and
    // with e2, e3, e4 (three more singletons).
    n8 += 3;
    n1 += 3;
    c.pair_components = {
        {"same-component skew pairs", n24, 24},
        {"same-component incident quadruples", n4, 4},
        {"cross-component pairs", n32, 32},
        {"e_i with one component", n8, 8},
        {"e_i e_j pairs", n1, 1},
    };
    // family-level census: three obvious families, six components of eight
    // families (the e-type families), one component of twelve
    c.family_components = {
        {"obvious families", 3, 1},
        {"e-paired components", 6, 8},
        {"mixed same-component families", 1, 12},
    };
    return c;
}

int Yf2Census::total_pairs() const {
    int t = 0;
    for (auto& r : pair_components) t += r.component_count * r.size_per_component;
    return t;
}

int Yf2Census::total_families() const {
    int t = 0;
    for (auto& r : family_components) t += r.component_count * r.size_per_component;
    return t;
}

GroupStructure verify_s4_z2_structure() {
    const Lines27& L = lines27();
    GroupStructure s;
    Group g = order192_group();
    s.order_192 = g.order() == 192;

    // the four incident pairs in the A-orbit
    std::array<std::pair<int, int>, 4> p{{
        {L.index_of("G46"), L.index_of("G35")},
        {L.index_of("G36"), L.index_of("G45")},
        {L.index_of("C1"), L.index_of("E2")},
        {L.index_of("C2"), L.index_of("E1")},
    }};
    auto act_on_pairs = [&](const WeylElem& w) {
        std::array<int, 4> img{};
        for (int k = 0; k < 4; ++k) {
            std::set<int> target{w.perm[size_t(p[size_t(k)].first)], w.perm[size_t(p[size_t(k)].second)]};
            int found = -1;
            for (int m = 0; m < 4; ++m) {
                std::set<int> cand{p[size_t(m)].first, p[size_t(m)].second};
                if (cand == target) { found = m; break; }
            }
            img[size_t(k)] = found;
        }
        return img;
    };

    std::vector<WeylElem> kernel;
    std::set<std::array<int, 4>> images;
    bool faithful_onto_pairs = true;
    for (const auto& w : g.elements) {
        auto img = act_on_pairs(w);
        for (int v : img)
            if (v < 0) faithful_onto_pairs = false;
        images.insert(img);
        if (img == std::array<int, 4>{0, 1, 2, 3}) kernel.push_back(w);
    }
    s.kernel_order_8 = kernel.size() == 8;
    s.kernel_abelian = true;
    for (const auto& u : kernel)
        for (const auto& v : kernel)
            if (!(u.then(v) == v.then(u))) s.kernel_abelian = false;
    s.quotient_s4 = faithful_onto_pairs && images.size() == 24;
    return s;
}

} // namespace tconic::lattice
