#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "preftop/error.hpp"
#include "preftop/preferences.hpp"

namespace preftop {

enum class SwfKind { PairwiseMajority, Dictator, LookupTable };

// Map from profiles to aggregate ternary codes. Lookup tables are total:
// construction verifies one entry per profile, keyed by the profile's text
// form.
struct SocialWelfareFunction {
    SwfKind kind = SwfKind::PairwiseMajority;
    AlternativeSet alts;
    int individuals = 0;
    int dictator_index = -1;
    std::map<std::string, TernaryCode> table;
    std::string name;
};

struct AuditOptions {
    long long profile_cap = 10'000'000;
};

// Enumerates P(A)^N in lexicographic order: individual 0 is the most
// significant position, ballots ordered as enumerate_weak_orders.
class ProfileSpace {
  public:
    ProfileSpace(const AlternativeSet& alts, int n, bool strict_only = false)
        : alts_(alts), n_(n) {
        if (n < 1) fail(errc::domain, "profile space needs at least 1 individual");
        if (strict_only) {
            for (const auto& o : enumerate_strict_orders(alts))
                ballots_.push_back(o.to_weak());
        } else {
            ballots_ = enumerate_weak_orders(alts);
        }
        size_ = 1;
        for (int i = 0; i < n_; ++i) {
            if (size_ > (1LL << 62) / static_cast<long long>(ballots_.size())) {
                size_ = -1;  // too many to count exactly; certainly above any cap
                return;
            }
            size_ *= static_cast<long long>(ballots_.size());
        }
    }

    const AlternativeSet& alts() const { return alts_; }
    int individuals() const { return n_; }
    long long size() const { return size_; }
    const std::vector<WeakOrder>& ballots() const { return ballots_; }

    void require_within(const AuditOptions& opt, const char* op) const {
        if (size_ < 0 || size_ > opt.profile_cap)
            fail(errc::resource,
                 std::string(op) + " would enumerate " +
                     (size_ < 0 ? std::string("more than 2^62")
                                : std::to_string(size_)) +
                     " profiles, above the cap of " +
                     std::to_string(opt.profile_cap));
    }

    template <class F>
    void for_each(F&& fn) const {
        std::vector<size_t> idx(static_cast<size_t>(n_), 0);
        Profile p;
        p.alts = alts_;
        p.orders.assign(static_cast<size_t>(n_), ballots_[0]);
        while (true) {
            for (size_t i = 0; i < idx.size(); ++i) p.orders[i] = ballots_[idx[i]];
            fn(p);
            size_t pos = idx.size();
            while (pos > 0) {
                --pos;
                if (++idx[pos] < ballots_.size()) break;
                idx[pos] = 0;
                if (pos == 0) return;
            }
        }
    }

  private:
    AlternativeSet alts_;
    int n_;
    std::vector<WeakOrder> ballots_;
    long long size_ = 0;
};

namespace detail {

inline void check_profile(const SocialWelfareFunction& swf, const Profile& p) {
    if (p.alts.ids != swf.alts.ids)
        fail(errc::domain, "profile alternatives do not match the rule's");
    if (static_cast<int>(p.orders.size()) != swf.individuals)
        fail(errc::domain, "profile has " + std::to_string(p.orders.size()) +
                               " ballots, rule expects " +
                               std::to_string(swf.individuals));
}

}  // namespace detail

inline TernaryCode aggregate(const SocialWelfareFunction& swf,
                             const Profile& p) {
    detail::check_profile(swf, p);
    switch (swf.kind) {
        case SwfKind::Dictator:
            return encode(p.orders[static_cast<size_t>(swf.dictator_index)]);
        case SwfKind::LookupTable: {
            auto it = swf.table.find(to_string(p));
            if (it == swf.table.end())
                fail(errc::domain, "lookup table has no entry for " + to_string(p));
            return it->second;
        }
        case SwfKind::PairwiseMajority: {
            std::vector<Rel> entries;
            for (auto [a, b] : p.alts.pairs()) {
                int for_a = 0, for_b = 0;
                for (const auto& w : p.orders) {
                    if (w.prefers(a, b)) ++for_a;
                    if (w.prefers(b, a)) ++for_b;
                }
                entries.push_back(for_a > for_b   ? Rel::fst
                                  : for_b > for_a ? Rel::snd
                                                  : Rel::tie);
            }
            return TernaryCode::make(p.alts, entries);
        }
    }
    fail(errc::domain, "unknown social welfare function kind");
}

inline SocialWelfareFunction pairwise_majority(const AlternativeSet& alts,
                                               int individuals) {
    if (individuals < 1) fail(errc::domain, "need at least 1 individual");
    SocialWelfareFunction swf;
    swf.kind = SwfKind::PairwiseMajority;
    swf.alts = alts;
    swf.individuals = individuals;
    swf.name = "pairwise-majority";
    return swf;
}

inline SocialWelfareFunction dictator(const AlternativeSet& alts,
                                      int individuals, int index) {
    if (index < 0 || index >= individuals)
        fail(errc::domain, "dictator index " + std::to_string(index) +
                               " outside 0.." + std::to_string(individuals - 1));
    SocialWelfareFunction swf;
    swf.kind = SwfKind::Dictator;
    swf.alts = alts;
    swf.individuals = individuals;
    swf.dictator_index = index;
    swf.name = "dictator:" + std::to_string(index);
    return swf;
}

inline SocialWelfareFunction lookup_table(
    const AlternativeSet& alts, int individuals,
    std::map<std::string, TernaryCode> table, const std::string& name,
    AuditOptions opt = {}) {
    ProfileSpace space(alts, individuals);
    space.require_within(opt, "lookup table construction");
    long long seen = 0;
    space.for_each([&](const Profile& p) {
        auto it = table.find(to_string(p));
        if (it == table.end())
            fail(errc::construction, "table is missing profile " + to_string(p));
        if (it->second.alts.ids != alts.ids)
            fail(errc::construction,
                 "table entry for " + to_string(p) + " uses other alternatives");
        ++seen;
    });
    if (seen != static_cast<long long>(table.size()))
        fail(errc::construction, "table has entries for unknown profiles");
    SocialWelfareFunction swf;
    swf.kind = SwfKind::LookupTable;
    swf.alts = alts;
    swf.individuals = individuals;
    swf.table = std::move(table);
    swf.name = name;
    return swf;
}

// Tabulates any rule into an equivalent lookup table.
inline SocialWelfareFunction materialize(const SocialWelfareFunction& swf,
                                         AuditOptions opt = {}) {
    ProfileSpace space(swf.alts, swf.individuals);
    space.require_within(opt, "materialization");
    std::map<std::string, TernaryCode> table;
    space.for_each(
        [&](const Profile& p) { table.emplace(to_string(p), aggregate(swf, p)); });
    return lookup_table(swf.alts, swf.individuals, std::move(table),
                        "table(" + swf.name + ")", opt);
}

inline SocialWelfareFunction constant_table(const AlternativeSet& alts,
                                            int individuals,
                                            const TernaryCode& value,
                                            AuditOptions opt = {}) {
    ProfileSpace space(alts, individuals);
    space.require_within(opt, "constant table construction");
    std::map<std::string, TernaryCode> table;
    space.for_each([&](const Profile& p) { table.emplace(to_string(p), value); });
    return lookup_table(alts, individuals, std::move(table),
                        "constant:" + to_string(value), opt);
}

// Positional-score rule: an alternative earns 2 points per alternative
// ranked strictly below it and 1 per tie, summed over ballots; the
// aggregate ranks by total score. Not pairwise-local, so it fails the
// irrelevant-alternatives audit already at 3 alternatives, 2 individuals.
inline SocialWelfareFunction borda_table(const AlternativeSet& alts,
                                         int individuals,
                                         AuditOptions opt = {}) {
    ProfileSpace space(alts, individuals);
    space.require_within(opt, "score table construction");
    std::map<std::string, TernaryCode> table;
    space.for_each([&](const Profile& p) {
        std::map<Alt, int> score;
        for (Alt x : alts.ids) {
            int s = 0;
            for (const auto& w : p.orders)
                for (Alt y : alts.ids) {
                    if (y == x) continue;
                    if (w.prefers(x, y)) s += 2;
                    else if (w.indifferent(x, y)) s += 1;
                }
            score[x] = s;
        }
        std::vector<Rel> entries;
        for (auto [a, b] : alts.pairs())
            entries.push_back(score[a] > score[b]   ? Rel::fst
                              : score[b] > score[a] ? Rel::snd
                                                    : Rel::tie);
        table.emplace(to_string(p), TernaryCode::make(alts, entries));
    });
    return lookup_table(alts, individuals, std::move(table), "borda", opt);
}

// Seeded rule built pair by pair: each pair gets a random map from the
// N-tuple of ballot stances to an outcome, pinned to agree with unanimous
// strict stances. Pairwise locality and unanimity then hold by
// construction.
inline SocialWelfareFunction random_pairwise_table(const AlternativeSet& alts,
                                                   int individuals,
                                                   unsigned seed,
                                                   AuditOptions opt = {}) {
    ProfileSpace space(alts, individuals);
    space.require_within(opt, "random table construction");
    std::mt19937 rng(seed);
    const Rel rels[3] = {Rel::fst, Rel::snd, Rel::tie};

    size_t inputs = 1;
    for (int i = 0; i < individuals; ++i) inputs *= 3;
    std::map<std::pair<Alt, Alt>, std::vector<Rel>> pair_fn;
    for (auto [a, b] : alts.pairs()) {
        std::vector<Rel> fn(inputs);
        for (size_t code = 0; code < inputs; ++code)
            fn[code] = rels[rng() % 3];
        fn[0] = Rel::fst;           // every stance 0: all prefer the first
        size_t all_snd = 0;
        for (int i = 0; i < individuals; ++i) all_snd = all_snd * 3 + 1;
        fn[all_snd] = Rel::snd;
        pair_fn[{a, b}] = fn;
    }

    std::map<std::string, TernaryCode> table;
    space.for_each([&](const Profile& p) {
        std::vector<Rel> entries;
        for (auto [a, b] : alts.pairs()) {
            size_t code = 0;
            for (const auto& w : p.orders) {
                int digit = w.prefers(a, b) ? 0 : w.prefers(b, a) ? 1 : 2;
                code = code * 3 + static_cast<size_t>(digit);
            }
            entries.push_back(pair_fn[{a, b}][code]);
        }
        table.emplace(to_string(p), TernaryCode::make(alts, entries));
    });
    return lookup_table(alts, individuals, std::move(table),
                        "random:" + std::to_string(seed), opt);
}

// ---------------------------------------------------------------------------
// Fairness audits. Every failure carries a certificate that replays.

struct UnanimityViolation {
    Profile profile;
    Alt first = 0, second = 0;  // everyone ranked first above second
};

struct UnanimityReport {
    bool pass = true;
    std::optional<UnanimityViolation> violation;
};

inline UnanimityReport check_unanimity(const SocialWelfareFunction& swf,
                                       AuditOptions opt = {}) {
    ProfileSpace space(swf.alts, swf.individuals);
    space.require_within(opt, "unanimity audit");
    UnanimityReport report;
    space.for_each([&](const Profile& p) {
        if (!report.pass) return;
        TernaryCode out = aggregate(swf, p);
        for (Alt a : swf.alts.ids) {
            for (Alt b : swf.alts.ids) {
                if (a == b) continue;
                bool all = true;
                for (const auto& w : p.orders)
                    if (!w.prefers(a, b)) { all = false; break; }
                if (!all) continue;
                if (!(prefers(out, a, b) && !prefers(out, b, a))) {
                    report.pass = false;
                    report.violation = UnanimityViolation{p, a, b};
                    return;
                }
            }
        }
    });
    return report;
}

struct IiaViolation {
    Profile left, right;        // agree pairwise on {first, second}
    Alt first = 0, second = 0;  // yet the aggregates differ there
};

struct IiaReport {
    bool pass = true;
    std::optional<IiaViolation> violation;
};

inline IiaReport check_iia(const SocialWelfareFunction& swf,
                           AuditOptions opt = {}) {
    ProfileSpace space(swf.alts, swf.individuals);
    space.require_within(opt, "pairwise-locality audit");
    IiaReport report;
    for (auto [a, b] : swf.alts.pairs()) {
        if (!report.pass) break;
        AlternativeSet pair_set = AlternativeSet::of({a, b});
        std::map<std::string, std::pair<Profile, Rel>> groups;
        space.for_each([&](const Profile& p) {
            if (!report.pass) return;
            std::string key = to_string(restrict(p, pair_set));
            Rel out = aggregate(swf, p).at(a, b);
            auto [it, fresh] = groups.emplace(key, std::make_pair(p, out));
            if (!fresh && it->second.second != out) {
                report.pass = false;
                report.violation = IiaViolation{it->second.first, p, a, b};
            }
        });
    }
    return report;
}

struct DictatorReport {
    std::optional<int> dictator;
    // per non-dictator, the first profile where their strict preference
    // is overruled
    std::map<int, UnanimityViolation> overruled;
};

inline DictatorReport find_dictator(const SocialWelfareFunction& swf,
                                    AuditOptions opt = {}) {
    ProfileSpace space(swf.alts, swf.individuals);
    space.require_within(opt, "dictator search");
    DictatorReport report;
    for (int i = 0; i < swf.individuals; ++i) {
        std::optional<UnanimityViolation> witness;
        space.for_each([&](const Profile& p) {
            if (witness) return;
            TernaryCode out = aggregate(swf, p);
            const WeakOrder& w = p.orders[static_cast<size_t>(i)];
            for (Alt a : swf.alts.ids)
                for (Alt b : swf.alts.ids) {
                    if (a == b || !w.prefers(a, b)) continue;
                    if (!(prefers(out, a, b) && !prefers(out, b, a))) {
                        witness = UnanimityViolation{p, a, b};
                        return;
                    }
                }
        });
        if (witness) {
            report.overruled.emplace(i, *witness);
        } else if (report.dictator) {
            fail(errc::lemma, "two distinct dictators found, which is impossible");
        } else {
            report.dictator = i;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Restriction of a rule to a 3-alternative window.

// The rule restricted to a triple B: domain profiles are those whose
// aggregate, cut down to B, is either a strict order or a total cycle
// (possibly carrying ties); values are keyed by the restricted profile.
// Well-definedness over restricted profiles is verified, not assumed.
struct TripleRestriction {
    AlternativeSet triple;
    std::vector<Profile> domain;
    std::map<std::string, TernaryCode> values;
    std::map<std::string, Profile> witness;  // first preimage per key
    long long commutation_checked = 0;
    bool commutes = true;
};

inline TripleRestriction restrict_to_triple(const SocialWelfareFunction& swf,
                                            const AlternativeSet& triple,
                                            AuditOptions opt = {}) {
    if (triple.size() != 3)
        fail(errc::domain, "restriction window must have exactly 3 alternatives");
    if (!triple.subset_of(swf.alts))
        fail(errc::domain, "restriction window is not a subset of the rule's "
                           "alternatives");
    auto iia = check_iia(swf, opt);
    if (!iia.pass) {
        const auto& v = *iia.violation;
        fail(errc::construction,
             "restriction is ill-defined: rule is not pairwise-local; "
             "profiles " +
                 to_string(v.left) + " and " + to_string(v.right) +
                 " agree on {" + alt_name(v.first) + "," + alt_name(v.second) +
                 "} but aggregate differently there");
    }

    ProfileSpace space(swf.alts, swf.individuals);
    space.require_within(opt, "triple restriction");
    TripleRestriction out;
    out.triple = triple;
    space.for_each([&](const Profile& p) {
        TernaryCode cut = restrict(aggregate(swf, p), triple);
        Decoded dec = decode(cut);
        bool eligible = false;
        if (const auto* w = std::get_if<WeakOrder>(&dec))
            eligible = w->is_strict();
        else if (const auto* y = std::get_if<PreferenceCycle>(&dec))
            eligible = y->is_total();
        if (!eligible) return;
        std::string key = to_string(restrict(p, triple));
        auto it = out.values.find(key);
        if (it == out.values.end()) {
            out.values.emplace(key, cut);
            out.witness.emplace(key, p);
        } else if (!(it->second == cut)) {
            fail(errc::construction,
                 "restriction is ill-defined: profiles " +
                     to_string(out.witness.at(key)) + " and " + to_string(p) +
                     " restrict identically but aggregate differently");
        }
        out.domain.push_back(p);
    });

    for (const Profile& p : out.domain) {
        TernaryCode direct = restrict(aggregate(swf, p), triple);
        TernaryCode via = out.values.at(to_string(restrict(p, triple)));
        ++out.commutation_checked;
        if (!(direct == via)) out.commutes = false;
    }
    return out;
}

// Decoded image of the restricted rule: which strict orders and which
// cycles it can output on the window.
struct TripleImage {
    AlternativeSet triple;
    std::set<std::string> orders;
    std::set<std::string> cycles;
};

inline TripleImage image_on_triple(const SocialWelfareFunction& swf,
                                   const AlternativeSet& triple,
                                   AuditOptions opt = {}) {
    auto unanimity = check_unanimity(swf, opt);
    if (!unanimity.pass) {
        const auto& v = *unanimity.violation;
        fail(errc::precondition,
             "unanimity audit failed: on " + to_string(v.profile) +
                 " everyone puts " + alt_name(v.first) + " above " +
                 alt_name(v.second) + " but the aggregate does not");
    }
    TripleRestriction t = restrict_to_triple(swf, triple, opt);
    TripleImage image;
    image.triple = triple;
    for (const auto& [key, code] : t.values) {
        Decoded dec = decode(code);
        if (const auto* w = std::get_if<WeakOrder>(&dec))
            image.orders.insert(to_string(*w));
        else if (const auto* y = std::get_if<PreferenceCycle>(&dec))
            image.cycles.insert(to_string(*y));
    }
    return image;
}

}  // namespace preftop
