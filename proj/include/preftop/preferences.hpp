#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "preftop/error.hpp"

namespace preftop {

// Alternatives are 0-based indices internally; all text forms display id+1.
using Alt = int;

inline std::string alt_name(Alt a) { return std::to_string(a + 1); }

inline Alt alt_from_name(const std::string& s) {
    if (s.empty()) fail(errc::domain, "empty alternative name");
    for (char c : s)
        if (c < '0' || c > '9') fail(errc::domain, "bad alternative name: " + s);
    long v = std::stol(s);
    if (v < 1) fail(errc::domain, "alternative names start at 1: " + s);
    return static_cast<Alt>(v - 1);
}

struct AlternativeSet {
    std::vector<Alt> ids;  // sorted ascending, no duplicates

    static AlternativeSet universe(int n) {
        if (n < 0) fail(errc::domain, "negative alternative count");
        AlternativeSet s;
        s.ids.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) s.ids[static_cast<size_t>(i)] = i;
        return s;
    }

    static AlternativeSet of(std::vector<Alt> ids) {
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            fail(errc::domain, "duplicate alternative id");
        if (!ids.empty() && ids.front() < 0)
            fail(errc::domain, "negative alternative id");
        return AlternativeSet{std::move(ids)};
    }

    int size() const { return static_cast<int>(ids.size()); }

    bool contains(Alt a) const {
        return std::binary_search(ids.begin(), ids.end(), a);
    }

    // Position of a in the sorted id list.
    int index_of(Alt a) const {
        auto it = std::lower_bound(ids.begin(), ids.end(), a);
        if (it == ids.end() || *it != a)
            fail(errc::domain, "alternative " + alt_name(a) + " not in set");
        return static_cast<int>(it - ids.begin());
    }

    bool subset_of(const AlternativeSet& other) const {
        return std::includes(other.ids.begin(), other.ids.end(), ids.begin(),
                             ids.end());
    }

    // Unordered pairs {a,b}, a<b, lexicographic. This is the canonical index
    // order for ternary codes.
    std::vector<std::pair<Alt, Alt>> pairs() const {
        std::vector<std::pair<Alt, Alt>> out;
        for (size_t i = 0; i < ids.size(); ++i)
            for (size_t j = i + 1; j < ids.size(); ++j)
                out.emplace_back(ids[i], ids[j]);
        return out;
    }

    bool operator==(const AlternativeSet&) const = default;
};

// Value of a ternary code entry for the pair {a,b}, a<b:
//   fst: a strictly preferred to b
//   snd: b strictly preferred to a
//   tie: indifferent
enum class Rel : char { fst = '0', snd = '1', tie = 'e' };

inline Rel flip(Rel r) {
    if (r == Rel::fst) return Rel::snd;
    if (r == Rel::snd) return Rel::fst;
    return Rel::tie;
}

inline char rel_char(Rel r) { return static_cast<char>(r); }

inline Rel rel_from_char(char c) {
    if (c == '0') return Rel::fst;
    if (c == '1') return Rel::snd;
    if (c == 'e') return Rel::tie;
    fail(errc::domain, std::string("bad relation symbol: ") + c);
}

struct TernaryCode {
    AlternativeSet alts;
    std::vector<Rel> entries;  // one per alts.pairs(), same order

    static TernaryCode make(AlternativeSet alts, std::vector<Rel> entries) {
        size_t n = static_cast<size_t>(alts.size());
        if (entries.size() != n * (n - 1) / 2)
            fail(errc::domain, "code entry count does not match pair count");
        return TernaryCode{std::move(alts), std::move(entries)};
    }

    // Entry for the ordered query (a,b): fst means a strictly preferred.
    Rel at(Alt a, Alt b) const {
        if (a == b) fail(errc::domain, "pair needs distinct alternatives");
        bool swapped = a > b;
        if (swapped) std::swap(a, b);
        int i = alts.index_of(a), j = alts.index_of(b);
        int n = alts.size();
        int idx = i * n - i * (i + 1) / 2 + (j - i - 1);
        Rel r = entries[static_cast<size_t>(idx)];
        return swapped ? flip(r) : r;
    }

    // Presentation helper for three alternatives a<b<c: entries in the pair
    // order (a,b),(b,c),(c,a). This is the tuple convention used by the
    // cyclic examples; canonical storage stays lexicographic.
    std::array<Rel, 3> cyclic_tuple() const {
        if (alts.size() != 3)
            fail(errc::unsupported, "cyclic tuple defined for 3 alternatives");
        Alt a = alts.ids[0], b = alts.ids[1], c = alts.ids[2];
        return {at(a, b), at(b, c), at(c, a)};
    }

    bool operator==(const TernaryCode&) const = default;
};

// a strictly preferred to b under the code.
inline bool prefers(const TernaryCode& t, Alt a, Alt b) {
    return t.at(a, b) == Rel::fst;
}

// Completeness is structural (every pair carries a value); transitivity of
// the weak relation x preferred-or-tied y is checked by triple scan.
inline bool is_transitive_complete(const TernaryCode& t) {
    const auto& ids = t.alts.ids;
    auto weakly = [&](Alt x, Alt y) { return !prefers(t, y, x); };
    for (Alt x : ids)
        for (Alt y : ids)
            for (Alt z : ids) {
                if (x == y || y == z || x == z) continue;
                if (weakly(x, y) && weakly(y, z) && !weakly(x, z)) return false;
            }
    return true;
}

struct WeakOrder {
    AlternativeSet alts;
    // tiers[0] is the most-preferred tier; members sorted ascending. In text
    // the order reads left to right, e.g. tiers {{a,b},{c}} prints "a~b<c".
    std::vector<std::vector<Alt>> tiers;

    static WeakOrder make(AlternativeSet alts,
                          std::vector<std::vector<Alt>> tiers) {
        std::vector<Alt> seen;
        for (auto& tier : tiers) {
            if (tier.empty()) fail(errc::domain, "empty tier");
            std::sort(tier.begin(), tier.end());
            seen.insert(seen.end(), tier.begin(), tier.end());
        }
        std::sort(seen.begin(), seen.end());
        if (seen != alts.ids)
            fail(errc::domain, "tiers must partition the alternative set");
        return WeakOrder{std::move(alts), std::move(tiers)};
    }

    int tier_of(Alt a) const {
        for (size_t i = 0; i < tiers.size(); ++i)
            if (std::binary_search(tiers[i].begin(), tiers[i].end(), a))
                return static_cast<int>(i);
        fail(errc::domain, "alternative " + alt_name(a) + " not ranked");
    }

    bool prefers(Alt a, Alt b) const { return tier_of(a) < tier_of(b); }
    bool indifferent(Alt a, Alt b) const { return tier_of(a) == tier_of(b); }

    bool is_strict() const {
        return std::all_of(tiers.begin(), tiers.end(),
                           [](const auto& t) { return t.size() == 1; });
    }

    bool operator==(const WeakOrder&) const = default;
};

struct StrictOrder {
    AlternativeSet alts;
    std::vector<Alt> ranking;  // most preferred first; permutation of alts

    static StrictOrder make(AlternativeSet alts, std::vector<Alt> ranking) {
        std::vector<Alt> sorted = ranking;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != alts.ids)
            fail(errc::domain, "ranking must be a permutation of the set");
        return StrictOrder{std::move(alts), std::move(ranking)};
    }

    WeakOrder to_weak() const {
        std::vector<std::vector<Alt>> tiers;
        tiers.reserve(ranking.size());
        for (Alt a : ranking) tiers.push_back({a});
        return WeakOrder{alts, std::move(tiers)};
    }

    bool operator==(const StrictOrder&) const = default;
};

// Cyclic chain of distinct alternatives; step i relates elements[i] to
// elements[i+1 mod k], strictly or as a tie, wrapping around. At least one
// step is strict (an all-tie loop is just indifference). Canonical form
// rotates the smallest element to the front; reversal is a distinct cycle.
struct PreferenceCycle {
    AlternativeSet alts;  // ground set; the cycle is total iff it covers it
    std::vector<Alt> elements;
    std::vector<bool> strict_step;

    static PreferenceCycle make(AlternativeSet alts, std::vector<Alt> elements,
                                std::vector<bool> strict_step) {
        if (elements.size() < 2)
            fail(errc::domain, "cycle needs at least two elements");
        if (strict_step.size() != elements.size())
            fail(errc::domain, "cycle needs one step per element");
        std::vector<Alt> sorted = elements;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(errc::domain, "cycle elements must be distinct");
        for (Alt a : elements)
            if (!alts.contains(a))
                fail(errc::domain, "cycle element outside the set");
        if (std::none_of(strict_step.begin(), strict_step.end(),
                         [](bool s) { return s; }))
            fail(errc::domain, "cycle needs at least one strict step");
        PreferenceCycle c{std::move(alts), std::move(elements),
                          std::move(strict_step)};
        c.canonicalize();
        return c;
    }

    void canonicalize() {
        size_t k = elements.size();
        size_t at = static_cast<size_t>(
            std::min_element(elements.begin(), elements.end()) -
            elements.begin());
        std::rotate(elements.begin(), elements.begin() + at, elements.end());
        std::vector<bool> steps(k);
        for (size_t i = 0; i < k; ++i) steps[i] = strict_step[(i + at) % k];
        strict_step = std::move(steps);
    }

    bool is_strict() const {
        return std::all_of(strict_step.begin(), strict_step.end(),
                           [](bool s) { return s; });
    }

    bool is_total() const {
        return static_cast<int>(elements.size()) == alts.size();
    }

    PreferenceCycle reversed() const {
        size_t k = elements.size();
        std::vector<Alt> rev(k);
        std::vector<bool> steps(k);
        rev[0] = elements[0];
        for (size_t j = 1; j < k; ++j) rev[j] = elements[k - j];
        // reversed step j runs rev[j] -> rev[j+1], the reverse of the
        // original step (k-j-1) mod k
        for (size_t j = 0; j < k; ++j) steps[j] = strict_step[(k - j - 1) % k];
        return PreferenceCycle{alts, std::move(rev), std::move(steps)};
    }

    bool operator==(const PreferenceCycle&) const = default;
};

// A code whose relation is intransitive but, with more than three
// alternatives, not presentable as one total cycle; kept as the raw code.
struct CyclicRelation {
    TernaryCode code;
    bool operator==(const CyclicRelation&) const = default;
};

using Decoded = std::variant<WeakOrder, PreferenceCycle, CyclicRelation>;

struct Profile {
    AlternativeSet alts;
    std::vector<WeakOrder> orders;  // one per individual, all over alts

    static Profile make(AlternativeSet alts, std::vector<WeakOrder> orders) {
        for (const auto& o : orders)
            if (o.alts != alts)
                fail(errc::domain, "ballot over the wrong alternative set");
        return Profile{std::move(alts), std::move(orders)};
    }

    int individuals() const { return static_cast<int>(orders.size()); }

    bool operator==(const Profile&) const = default;
};

// ---- enumeration ----

inline std::vector<StrictOrder> enumerate_strict_orders(
    const AlternativeSet& alts) {
    if (alts.size() < 1) fail(errc::domain, "need at least one alternative");
    std::vector<Alt> perm = alts.ids;
    std::vector<StrictOrder> out;
    do {
        out.push_back(StrictOrder{alts, perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace detail {
inline void weak_orders_rec(const AlternativeSet& alts,
                            const std::vector<Alt>& rest,
                            std::vector<std::vector<Alt>>& tiers,
                            std::vector<WeakOrder>& out) {
    if (rest.empty()) {
        out.push_back(WeakOrder{alts, tiers});
        return;
    }
    size_t n = rest.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Alt> tier, rem;
        for (size_t i = 0; i < n; ++i)
            ((mask >> i) & 1u ? tier : rem).push_back(rest[i]);
        tiers.push_back(std::move(tier));
        weak_orders_rec(alts, rem, tiers, out);
        tiers.pop_back();
    }
}
}  // namespace detail

inline std::vector<WeakOrder> enumerate_weak_orders(
    const AlternativeSet& alts) {
    if (alts.size() < 1) fail(errc::domain, "need at least one alternative");
    if (alts.size() > 10)
        fail(errc::resource, "weak-order enumeration capped at 10 alternatives");
    std::vector<WeakOrder> out;
    std::vector<std::vector<Alt>> tiers;
    detail::weak_orders_rec(alts, alts.ids, tiers, out);
    return out;
}

// The two strict total cycles on a three-element set, smallest-first
// arrangement first: {a<b<c<a, a<c<b<a}.
inline std::vector<PreferenceCycle> valid_cycles(const AlternativeSet& alts) {
    if (alts.size() != 3)
        fail(errc::unsupported,
             "strict total cycles enumerated for exactly 3 alternatives");
    Alt a = alts.ids[0], b = alts.ids[1], c = alts.ids[2];
    std::vector<bool> strict{true, true, true};
    return {PreferenceCycle::make(alts, {a, b, c}, strict),
            PreferenceCycle::make(alts, {a, c, b}, strict)};
}

// ---- encode / decode ----

inline TernaryCode encode(const WeakOrder& w) {
    std::vector<Rel> entries;
    for (auto [a, b] : w.alts.pairs()) {
        if (w.prefers(a, b))
            entries.push_back(Rel::fst);
        else if (w.prefers(b, a))
            entries.push_back(Rel::snd);
        else
            entries.push_back(Rel::tie);
    }
    return TernaryCode{w.alts, std::move(entries)};
}

inline TernaryCode encode(const StrictOrder& s) { return encode(s.to_weak()); }

// Only a total cycle on three alternatives determines every pair (each pair
// is consecutive); larger cycles leave non-adjacent pairs undefined.
inline TernaryCode encode(const PreferenceCycle& c) {
    if (!c.is_total() || c.alts.size() != 3)
        fail(errc::unsupported,
             "only total cycles on 3 alternatives encode to a full code");
    size_t k = c.elements.size();
    std::vector<Rel> entries(3, Rel::tie);
    TernaryCode code{c.alts, std::move(entries)};
    auto pair_list = c.alts.pairs();
    for (size_t i = 0; i < k; ++i) {
        Alt x = c.elements[i], y = c.elements[(i + 1) % k];
        Rel r = c.strict_step[i] ? (x < y ? Rel::fst : Rel::snd) : Rel::tie;
        Alt lo = std::min(x, y), hi = std::max(x, y);
        for (size_t p = 0; p < pair_list.size(); ++p)
            if (pair_list[p].first == lo && pair_list[p].second == hi)
                code.entries[p] = r;
    }
    return code;
}

inline WeakOrder decode_weak(const TernaryCode& t) {
    // for a transitive complete relation, the count of strictly-better
    // alternatives is constant on indifference classes and orders them
    std::vector<std::pair<int, Alt>> keyed;
    for (Alt x : t.alts.ids) {
        int above = 0;
        for (Alt y : t.alts.ids)
            if (y != x && prefers(t, y, x)) ++above;
        keyed.emplace_back(above, x);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::vector<Alt>> tiers;
    int prev = -1;
    for (auto [above, x] : keyed) {
        if (tiers.empty() || above != prev) tiers.push_back({});
        tiers.back().push_back(x);
        prev = above;
    }
    return WeakOrder::make(t.alts, std::move(tiers));
}

inline Decoded decode(const TernaryCode& t) {
    if (is_transitive_complete(t)) return decode_weak(t);
    if (t.alts.size() == 3) {
        // an intransitive complete relation on 3 elements is one total
        // cycle; exactly one of the two arrangements traverses it
        Alt a = t.alts.ids[0], b = t.alts.ids[1], c = t.alts.ids[2];
        std::optional<PreferenceCycle> found;
        for (std::array<Alt, 3> arr :
             {std::array<Alt, 3>{a, b, c}, std::array<Alt, 3>{a, c, b}}) {
            bool ok = true;
            std::vector<bool> strict(3);
            for (int i = 0; i < 3; ++i) {
                Alt x = arr[static_cast<size_t>(i)];
                Alt y = arr[static_cast<size_t>((i + 1) % 3)];
                if (prefers(t, y, x)) {
                    ok = false;
                    break;
                }
                strict[static_cast<size_t>(i)] = prefers(t, x, y);
            }
            if (!ok) continue;
            if (found)
                fail(errc::lemma, "two cycle arrangements fit one code");
            found = PreferenceCycle::make(
                t.alts, {arr[0], arr[1], arr[2]}, strict);
        }
        if (!found) fail(errc::lemma, "intransitive 3-code with no cycle");
        return *found;
    }
    return CyclicRelation{t};
}

// ---- restriction ----

inline WeakOrder restrict(const WeakOrder& w, const AlternativeSet& B) {
    if (!B.subset_of(w.alts))
        fail(errc::domain, "restriction target is not a subset");
    std::vector<std::vector<Alt>> tiers;
    for (const auto& tier : w.tiers) {
        std::vector<Alt> kept;
        for (Alt a : tier)
            if (B.contains(a)) kept.push_back(a);
        if (!kept.empty()) tiers.push_back(std::move(kept));
    }
    return WeakOrder{B, std::move(tiers)};
}

inline StrictOrder restrict(const StrictOrder& s, const AlternativeSet& B) {
    if (!B.subset_of(s.alts))
        fail(errc::domain, "restriction target is not a subset");
    std::vector<Alt> ranking;
    for (Alt a : s.ranking)
        if (B.contains(a)) ranking.push_back(a);
    return StrictOrder{B, std::move(ranking)};
}

inline TernaryCode restrict(const TernaryCode& t, const AlternativeSet& B) {
    if (!B.subset_of(t.alts))
        fail(errc::domain, "restriction target is not a subset");
    std::vector<Rel> entries;
    for (auto [a, b] : B.pairs()) entries.push_back(t.at(a, b));
    return TernaryCode{B, std::move(entries)};
}

// Dropped elements merge their neighbouring steps; a merged step is strict
// if any constituent step was strict.
inline PreferenceCycle restrict(const PreferenceCycle& c,
                                const AlternativeSet& B) {
    if (!B.subset_of(c.alts))
        fail(errc::domain, "restriction target is not a subset");
    size_t k = c.elements.size();
    std::vector<size_t> kept;
    for (size_t i = 0; i < k; ++i)
        if (B.contains(c.elements[i])) kept.push_back(i);
    if (kept.size() < 2)
        fail(errc::domain, "cycle restriction needs two surviving elements");
    std::vector<Alt> elements;
    std::vector<bool> strict;
    for (size_t j = 0; j < kept.size(); ++j) {
        size_t from = kept[j];
        size_t to = kept[(j + 1) % kept.size()];
        elements.push_back(c.elements[from]);
        bool s = false;
        for (size_t i = from; i != to; i = (i + 1) % k)
            s = s || c.strict_step[i];
        strict.push_back(s);
    }
    return PreferenceCycle::make(B, std::move(elements), std::move(strict));
}

inline Profile restrict(const Profile& p, const AlternativeSet& B) {
    std::vector<WeakOrder> orders;
    orders.reserve(p.orders.size());
    for (const auto& o : p.orders) orders.push_back(restrict(o, B));
    return Profile{B, std::move(orders)};
}

// ---- text forms ----
// strict order "1<2<3" (most preferred first), weak order "1~2<3",
// cycle "1<2<3<1" (first element repeated), code "(e,0,1)" in the
// lexicographic pair order.

inline std::string to_string(const WeakOrder& w) {
    std::string out;
    for (size_t i = 0; i < w.tiers.size(); ++i) {
        if (i) out += '<';
        for (size_t j = 0; j < w.tiers[i].size(); ++j) {
            if (j) out += '~';
            out += alt_name(w.tiers[i][j]);
        }
    }
    return out;
}

inline std::string to_string(const StrictOrder& s) {
    return to_string(s.to_weak());
}

inline std::string to_string(const PreferenceCycle& c) {
    std::string out;
    for (size_t i = 0; i < c.elements.size(); ++i) {
        out += alt_name(c.elements[i]);
        out += c.strict_step[i] ? '<' : '~';
    }
    out += alt_name(c.elements[0]);
    return out;
}

inline std::string to_string(const TernaryCode& t) {
    std::string out = "(";
    for (size_t i = 0; i < t.entries.size(); ++i) {
        if (i) out += ',';
        out += rel_char(t.entries[i]);
    }
    return out + ")";
}

inline std::string to_string(const Decoded& d) {
    if (std::holds_alternative<WeakOrder>(d))
        return to_string(std::get<WeakOrder>(d));
    if (std::holds_alternative<PreferenceCycle>(d))
        return to_string(std::get<PreferenceCycle>(d));
    return "cyclic" + to_string(std::get<CyclicRelation>(d).code);
}

inline std::string to_string(const Profile& p) {
    std::string out;
    for (size_t i = 0; i < p.orders.size(); ++i) {
        if (i) out += '|';
        out += to_string(p.orders[i]);
    }
    return out;
}

namespace detail {
// Splits "1~2<3" style text into tokens and the separators between them.
inline void split_chain(const std::string& text, std::vector<std::string>& tok,
                        std::vector<char>& sep) {
    std::string cur;
    for (char c : text) {
        if (c == '<' || c == '~') {
            if (cur.empty()) fail(errc::domain, "empty element in: " + text);
            tok.push_back(cur);
            cur.clear();
            sep.push_back(c);
        } else {
            cur += c;
        }
    }
    if (cur.empty()) fail(errc::domain, "dangling separator in: " + text);
    tok.push_back(cur);
}
}  // namespace detail

inline WeakOrder parse_weak_order(const std::string& text,
                                  const AlternativeSet& alts) {
    std::vector<std::string> tok;
    std::vector<char> sep;
    detail::split_chain(text, tok, sep);
    std::vector<std::vector<Alt>> tiers;
    tiers.push_back({alt_from_name(tok[0])});
    for (size_t i = 0; i < sep.size(); ++i) {
        Alt a = alt_from_name(tok[i + 1]);
        if (sep[i] == '<')
            tiers.push_back({a});
        else
            tiers.back().push_back(a);
    }
    return WeakOrder::make(alts, std::move(tiers));
}

inline StrictOrder parse_strict_order(const std::string& text,
                                      const AlternativeSet& alts) {
    WeakOrder w = parse_weak_order(text, alts);
    if (!w.is_strict()) fail(errc::domain, "ties in strict order: " + text);
    std::vector<Alt> ranking;
    for (const auto& tier : w.tiers) ranking.push_back(tier[0]);
    return StrictOrder{alts, std::move(ranking)};
}

inline PreferenceCycle parse_cycle(const std::string& text,
                                   const AlternativeSet& alts) {
    std::vector<std::string> tok;
    std::vector<char> sep;
    detail::split_chain(text, tok, sep);
    if (tok.size() < 3 || tok.front() != tok.back())
        fail(errc::domain, "cycle text must return to its first element: " +
                               text);
    std::vector<Alt> elements;
    std::vector<bool> strict;
    for (size_t i = 0; i + 1 < tok.size(); ++i) {
        elements.push_back(alt_from_name(tok[i]));
        strict.push_back(sep[i] == '<');
    }
    return PreferenceCycle::make(alts, std::move(elements), std::move(strict));
}

inline TernaryCode parse_code(const std::string& text,
                              const AlternativeSet& alts) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        fail(errc::domain, "code text must be parenthesised: " + text);
    std::vector<Rel> entries;
    std::string body = text.substr(1, text.size() - 2);
    std::string cur;
    auto flush = [&]() {
        if (cur.size() != 1) fail(errc::domain, "bad code entry in: " + text);
        entries.push_back(rel_from_char(cur[0]));
        cur.clear();
    };
    for (char c : body) {
        if (c == ',')
            flush();
        else if (c != ' ')
            cur += c;
    }
    if (!body.empty()) flush();
    return TernaryCode::make(alts, std::move(entries));
}

inline Profile parse_profile(const std::string& text,
                             const AlternativeSet& alts) {
    std::vector<WeakOrder> orders;
    std::string cur;
    auto flush = [&]() {
        orders.push_back(parse_weak_order(cur, alts));
        cur.clear();
    };
    for (char c : text) {
        if (c == '|')
            flush();
        else
            cur += c;
    }
    flush();
    return Profile::make(alts, std::move(orders));
}

}  // namespace preftop
