#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "oneform/errors.hpp"

namespace oneform {

// A partition of the covering degree: the multiset of local multiplicities
// over one branch point. Parts are kept sorted descending.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        for (int v : parts)
            if (v < 1) throw InvalidInput("partition parts must be >= 1");
        std::sort(parts.rbegin(), parts.rend());
    }

    int degree() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int count() const { return static_cast<int>(parts.size()); }
    bool has_part_gt1() const { return !parts.empty() && parts.front() > 1; }
    // d - (number of parts): minimal transposition length of the class.
    int length() const { return degree() - count(); }

    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i)
            s += (i ? "+" : "") + std::to_string(parts[i]);
        return s;
    }
};

// Degree d plus one partition of d per branch point, in canonical sorted
// order. Valid data satisfy sum k_i = (n-2) d + 2.
struct BranchData {
    int d = 0;
    std::vector<Partition> partitions;

    static BranchData make(int d, std::vector<Partition> parts) {
        if (d < 2) throw InvalidInput("degree must be >= 2");
        for (const auto& p : parts) {
            if (p.degree() != d)
                throw DegreeMismatch("partition " + p.to_string() + " does not sum to " +
                                     std::to_string(d));
            if (!p.has_part_gt1())
                throw TrivialPartition("partition " + p.to_string() + " has no part > 1");
        }
        long long total_parts = 0;
        for (const auto& p : parts) total_parts += p.count();
        long long n = static_cast<long long>(parts.size());
        if (total_parts != (n - 2) * d + 2)
            throw RiemannHurwitzViolation(
                "sum of part counts is " + std::to_string(total_parts) + ", expected " +
                std::to_string((n - 2) * d + 2));
        std::sort(parts.begin(), parts.end());
        BranchData bd;
        bd.d = d;
        bd.partitions = std::move(parts);
        return bd;
    }

    int n() const { return static_cast<int>(partitions.size()); }

    bool operator==(const BranchData& o) const { return d == o.d && partitions == o.partitions; }
    bool operator<(const BranchData& o) const {
        return d != o.d ? d < o.d : partitions < o.partitions;
    }

    // Textual form "d; p11+p12|p21+..." e.g. "4; 3+1|2+2|2+2".
    std::string to_string() const {
        std::string s = std::to_string(d) + "; ";
        for (std::size_t i = 0; i < partitions.size(); ++i)
            s += (i ? "|" : "") + partitions[i].to_string();
        return s;
    }

    static BranchData parse(const std::string& text);
};

inline BranchData BranchData::parse(const std::string& text) {
    auto fail = [&](const std::string& why) {
        throw SyntaxError("bad branch data '" + text + "': " + why);
    };
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    auto read_int = [&]() -> int {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (start == i) fail("expected an integer at position " + std::to_string(start));
        return std::stoi(text.substr(start, i - start));
    };
    int d = read_int();
    skip_ws();
    if (i >= text.size() || text[i] != ';') fail("expected ';' after the degree");
    ++i;
    std::vector<Partition> parts;
    std::vector<int> current;
    current.push_back(read_int());
    for (;;) {
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] == '+') {
            ++i;
            current.push_back(read_int());
        } else if (text[i] == '|') {
            ++i;
            parts.push_back(Partition(current));
            current.clear();
            current.push_back(read_int());
        } else {
            fail(std::string("unexpected character '") + text[i] + "'");
        }
    }
    parts.push_back(Partition(current));
    return BranchData::make(d, std::move(parts));
}

// ---------------------------------------------------------------------------
// Permutations on {0..d-1}.

using Perm = std::vector<int>;

inline Perm perm_identity(int d) {
    Perm p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// (a * b)(i) = b[a[i]]: apply a first, then b.
inline Perm perm_mul(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<std::size_t>(a[i])];
    return r;
}

inline Perm perm_inv(const Perm& a) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return r;
}

inline Partition cycle_type(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    std::vector<int> parts;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(p[j]);
            ++len;
        }
        parts.push_back(len);
    }
    return Partition(parts);
}

inline int cycle_count(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    int c = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        ++c;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(p[j]);
        }
    }
    return c;
}

// Canonical representative of a cycle type: cycles laid out left to right,
// longest first, e.g. type 3+2 on {0..4} -> (0 1 2)(3 4).
inline Perm canonical_of_type(const Partition& type) {
    int d = type.degree();
    Perm p(static_cast<std::size_t>(d));
    int base = 0;
    for (int len : type.parts) {
        for (int i = 0; i < len; ++i)
            p[static_cast<std::size_t>(base + i)] = base + (i + 1) % len;
        base += len;
    }
    return p;
}

inline bool perm_list_transitive(const std::vector<Perm>& ps, int d) {
    std::vector<int> parent(static_cast<std::size_t>(d));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& p : ps)
        for (int i = 0; i < d; ++i) {
            int a = find(i), b = find(p[static_cast<std::size_t>(i)]);
            if (a != b) parent[static_cast<std::size_t>(a)] = b;
        }
    int root = find(0);
    for (int i = 1; i < d; ++i)
        if (find(i) != root) return false;
    return true;
}

namespace detail {

// All permutations of S_d bucketed by cycle type, cached per degree.
inline const std::map<Partition, std::vector<Perm>>& classes_of(int d) {
    static std::map<int, std::map<Partition, std::vector<Perm>>> cache;
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    std::map<Partition, std::vector<Perm>> buckets;
    Perm p = perm_identity(d);
    do {
        buckets[cycle_type(p)].push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return cache.emplace(d, std::move(buckets)).first->second;
}

inline const std::vector<Perm>& conjugacy_class(int d, const Partition& type) {
    const auto& buckets = classes_of(d);
    auto it = buckets.find(type);
    if (it == buckets.end()) throw InvalidInput("no class of type " + type.to_string());
    return it->second;
}

// Centralizer of sigma in S_d by scan; d <= 8 keeps this cheap.
inline std::vector<Perm> centralizer(const Perm& sigma) {
    int d = static_cast<int>(sigma.size());
    std::vector<Perm> out;
    Perm z = perm_identity(d);
    do {
        if (perm_mul(z, sigma) == perm_mul(sigma, z)) out.push_back(z);
    } while (std::next_permutation(z.begin(), z.end()));
    return out;
}

// Orbit representatives of a conjugacy class under conjugation by the
// centralizer of sigma1: simultaneous conjugation by Z(sigma1) preserves
// sigma1 and maps solutions to solutions, so one representative per orbit
// suffices at the first enumerated level.
inline std::vector<Perm> orbit_reps(const std::vector<Perm>& cls, const std::vector<Perm>& zs) {
    std::vector<Perm> reps;
    std::vector<Perm> canon;
    canon.reserve(cls.size());
    for (const auto& x : cls) {
        Perm best = x;
        for (const auto& z : zs) {
            Perm y = perm_mul(perm_mul(perm_inv(z), x), z);
            if (y < best) best = y;
        }
        canon.push_back(best);
    }
    std::vector<Perm> sorted = canon;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return sorted;
}

} // namespace detail

// Monodromy certificate: permutations whose cycle types match the branch
// data partitions in order, with identity product and transitive action.
struct Constellation {
    std::vector<Perm> sigma;

    bool verify(const BranchData& bd) const {
        if (static_cast<int>(sigma.size()) != bd.n()) return false;
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            if (static_cast<int>(sigma[i].size()) != bd.d) return false;
            if (!(cycle_type(sigma[i]) == bd.partitions[i])) return false;
        }
        Perm prod = perm_identity(bd.d);
        for (const auto& s : sigma) prod = perm_mul(prod, s);
        if (prod != perm_identity(bd.d)) return false;
        return perm_list_transitive(sigma, bd.d);
    }

    std::string to_string() const {
        std::string out;
        for (const auto& s : sigma) {
            out += out.empty() ? "" : " ";
            // cycle notation
            std::vector<bool> seen(s.size(), false);
            std::string one;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (seen[i] || s[i] == static_cast<int>(i)) {
                    seen[i] = true;
                    continue;
                }
                one += "(";
                std::size_t j = i;
                bool first = true;
                while (!seen[j]) {
                    seen[j] = true;
                    one += (first ? "" : " ") + std::to_string(j + 1);
                    first = false;
                    j = static_cast<std::size_t>(s[j]);
                }
                one += ")";
            }
            out += one.empty() ? "()" : one;
        }
        return out;
    }
};

// Exhaustive monodromy search: fixes a canonical representative for one
// class, enumerates full conjugacy classes (the first of them reduced to
// centralizer orbits) for the middle positions, and determines the last
// permutation as the inverse of the product. NotFound (nullopt) is a proof
// of non-realizability. Throws LimitExceeded past the node budget.
inline std::optional<Constellation> constellation_search(const BranchData& bd,
                                                         long long node_budget = 50000000) {
    const int d = bd.d;
    const int n = bd.n();

    // Internal order: the largest class last (determined), the second
    // largest first (fixed canonical representative), the rest ascending.
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    auto class_size = [&](int i) {
        return detail::conjugacy_class(d, bd.partitions[static_cast<std::size_t>(i)]).size();
    };
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        auto sa = class_size(a), sb = class_size(b);
        return sa != sb ? sa < sb : a < b;
    });
    std::vector<int> order;
    if (n >= 2) {
        order.push_back(idx[static_cast<std::size_t>(n - 2)]);                    // sigma_1
        for (int i = 0; i < n - 2; ++i) order.push_back(idx[static_cast<std::size_t>(i)]);
        order.push_back(idx[static_cast<std::size_t>(n - 1)]);                    // determined
    } else {
        order = idx;
    }
    if (n == 1) return std::nullopt;  // cannot satisfy identity product with one nontrivial class

    const Partition& last_type = bd.partitions[static_cast<std::size_t>(order.back())];
    const int last_len = last_type.length();

    std::vector<Perm> chosen(static_cast<std::size_t>(n));
    chosen[0] = canonical_of_type(bd.partitions[static_cast<std::size_t>(order[0])]);

    // Remaining-length suffix sums over the middle positions.
    std::vector<int> suffix_len(static_cast<std::size_t>(n), 0);
    for (int lev = n - 2; lev >= 1; --lev)
        suffix_len[static_cast<std::size_t>(lev)] =
            suffix_len[static_cast<std::size_t>(lev + 1)] +
            bd.partitions[static_cast<std::size_t>(order[static_cast<std::size_t>(lev)])].length();

    auto z1 = detail::centralizer(chosen[0]);
    long long nodes = 0;
    std::optional<Constellation> found;

    // Union-find over {0..d-1} for the connectivity prune: the remaining
    // permutations can merge at most (their total length) components.
    std::vector<int> parent(static_cast<std::size_t>(d));
    auto uf_find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    auto uf_components = [&](const std::vector<int>& par) {
        int c = 0;
        for (int i = 0; i < d; ++i)
            if (par[static_cast<std::size_t>(i)] == i) ++c;
        return c;
    };
    std::iota(parent.begin(), parent.end(), 0);
    for (int i = 0; i < d; ++i) {
        int a = uf_find(i), b = uf_find(chosen[0][static_cast<std::size_t>(i)]);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }

    // DFS over middle levels 1..n-2; level n-1 is determined.
    auto dfs = [&](auto&& self, int level, const Perm& partial) -> bool {
        if (level == n - 1) {
            Perm last = perm_inv(partial);
            if (!(cycle_type(last) == last_type)) return false;
            chosen[static_cast<std::size_t>(n - 1)] = last;
            std::vector<Perm> tuple(chosen.begin(), chosen.end());
            if (!perm_list_transitive(tuple, d)) return false;
            // Map back to canonical partition order with adjacent swaps
            // (a, b) -> (b, b^-1 a b), which preserves the product, the
            // classes and the generated subgroup.
            std::vector<int> pos = order;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j + 1 < n; ++j)
                    if (pos[static_cast<std::size_t>(j)] > pos[static_cast<std::size_t>(j + 1)]) {
                        Perm a = tuple[static_cast<std::size_t>(j)];
                        Perm b = tuple[static_cast<std::size_t>(j + 1)];
                        tuple[static_cast<std::size_t>(j)] = b;
                        tuple[static_cast<std::size_t>(j + 1)] =
                            perm_mul(perm_mul(perm_inv(b), a), b);
                        std::swap(pos[static_cast<std::size_t>(j)],
                                  pos[static_cast<std::size_t>(j + 1)]);
                    }
            Constellation c{std::move(tuple)};
            found = std::move(c);
            return true;
        }
        const auto& cls = detail::conjugacy_class(
            d, bd.partitions[static_cast<std::size_t>(order[static_cast<std::size_t>(level)])]);
        const std::vector<Perm>* pool = &cls;
        std::vector<Perm> reduced;
        if (level == 1) {
            reduced = detail::orbit_reps(cls, z1);
            pool = &reduced;
        }
        // Candidates that merge components go first; exhaustiveness is
        // unaffected, only the visiting order.
        std::vector<const Perm*> ordered;
        ordered.reserve(pool->size());
        for (const auto& s : *pool)
            ordered.push_back(&s);
        auto merges = [&](const Perm& s) {
            for (int i = 0; i < d; ++i)
                if (uf_find(i) != uf_find(s[static_cast<std::size_t>(i)])) return true;
            return false;
        };
        std::stable_partition(ordered.begin(), ordered.end(),
                              [&](const Perm* s) { return merges(*s); });
        int rest = suffix_len[static_cast<std::size_t>(level + 1)];
        for (const Perm* sp : ordered) {
            const Perm& s = *sp;
            if (++nodes > node_budget)
                throw LimitExceeded("constellation search exceeded the node budget");
            Perm next = perm_mul(partial, s);
            // Length feasibility and parity: multiplying by a class of
            // length l shifts the distance to the identity by at most l and
            // by exactly l mod 2.
            int len_next = d - cycle_count(next);
            if (std::abs(len_next - last_len) > rest) continue;
            if (((len_next - last_len) - rest) % 2 != 0) continue;
            // Connectivity: the remaining classes plus the determined last
            // one merge at most rest + last_len components.
            std::vector<int> saved = parent;
            for (int i = 0; i < d; ++i) {
                int a = uf_find(i), b = uf_find(s[static_cast<std::size_t>(i)]);
                if (a != b) parent[static_cast<std::size_t>(a)] = b;
            }
            if (uf_components(parent) - 1 > rest + last_len) {
                parent = std::move(saved);
                continue;
            }
            chosen[static_cast<std::size_t>(level)] = s;
            if (self(self, level + 1, next)) return true;
            parent = std::move(saved);
        }
        return false;
    };

    dfs(dfs, 1, chosen[0]);
    if (found && !found->verify(bd)) throw Error("internal", "constellation failed re-verification");
    return found;
}

enum class Realizability { yes, no, unknown };

struct RealizabilityResult {
    Realizability verdict = Realizability::unknown;
    std::string method;   // rule name, or "exhaustive-constellation"
    std::string reason;
    std::optional<Constellation> witness;
};

// Rule cascade for the genus-0 Hurwitz existence problem, falling back to
// the exhaustive oracle for degrees within `search_limit`.
inline RealizabilityResult realizable(const BranchData& bd, int search_limit = 8,
                                      long long node_budget = 50000000) {
    RealizabilityResult r;
    // Polynomial data: some partition is {d}, the full-degree singleton.
    for (const auto& p : bd.partitions)
        if (p.count() == 1) {
            r.verdict = Realizability::yes;
            r.method = "polynomial";
            r.reason = "a totally ramified branch point makes the datum polynomial";
            return r;
        }
    if (bd.d == 2 || bd.d == 3 || bd.d == 5 || bd.d == 7) {
        r.verdict = Realizability::yes;
        r.method = "small-degree";
        r.reason = "every branch datum of degree 2, 3, 5 or 7 is realizable";
        return r;
    }
    if (bd.d == 4) {
        BranchData exceptional = BranchData::make(
            4, {Partition({3, 1}), Partition({2, 2}), Partition({2, 2})});
        if (bd == exceptional) {
            r.verdict = Realizability::no;
            r.method = "exhaustive-constellation";
            r.reason = "the unique non-realizable degree-4 datum; exhaustive search "
                       "finds no constellation";
            if (constellation_search(bd, node_budget))
                throw Error("internal", "oracle contradicts the degree-4 table");
            return r;
        }
        r.verdict = Realizability::yes;
        r.method = "degree-4-table";
        r.reason = "every degree-4 datum other than 3+1|2+2|2+2 is realizable";
        return r;
    }
    // Laurent data: some partition with exactly two parts, four or more
    // branch points.
    bool laurent = std::any_of(bd.partitions.begin(), bd.partitions.end(),
                               [](const Partition& p) { return p.count() == 2; });
    if (laurent && bd.n() >= 4) {
        r.verdict = Realizability::yes;
        r.method = "laurent";
        r.reason = "Laurent datum with at least four branch points";
        return r;
    }
    if (bd.d > search_limit) {
        r.verdict = Realizability::unknown;
        r.method = "degree-above-limit";
        r.reason = "degree " + std::to_string(bd.d) + " exceeds the search limit " +
                   std::to_string(search_limit);
        return r;
    }
    try {
        auto c = constellation_search(bd, node_budget);
        r.method = "exhaustive-constellation";
        if (c) {
            r.verdict = Realizability::yes;
            r.reason = "constellation found";
            r.witness = std::move(c);
        } else {
            r.verdict = Realizability::no;
            r.reason = "exhaustive search found no constellation";
        }
    } catch (const LimitExceeded&) {
        r.verdict = Realizability::unknown;
        r.method = "search-budget-exceeded";
        r.reason = "node budget exhausted before the search completed";
    }
    return r;
}

// All partitions of d with at least one part > 1, ascending.
inline std::vector<Partition> nontrivial_partitions(int d) {
    std::vector<Partition> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            if (current.front() > 1) out.push_back(Partition(current));
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            current.push_back(p);
            self(self, remaining - p, p);
            current.pop_back();
        }
    };
    rec(rec, d, d);
    std::sort(out.begin(), out.end());
    return out;
}

// Every valid branch datum of degree d, for sweep tests; deterministic order.
inline std::vector<BranchData> all_valid_branch_data(int d) {
    std::vector<Partition> pool = nontrivial_partitions(d);
    std::vector<BranchData> out;
    // n branch points need sum of part counts (n-2) d + 2; part counts are
    // between 1 and d-1, which bounds n by 2d-2.
    for (int n = 2; n <= 2 * d - 2; ++n) {
        std::vector<int> pick;
        auto rec = [&](auto&& self, int start, int left, int parts_needed) -> void {
            if (left == 0) {
                if (parts_needed != 0) return;
                std::vector<Partition> ps;
                for (int i : pick) ps.push_back(pool[static_cast<std::size_t>(i)]);
                out.push_back(BranchData::make(d, std::move(ps)));
                return;
            }
            for (int i = start; i < static_cast<int>(pool.size()); ++i) {
                int c = pool[static_cast<std::size_t>(i)].count();
                if (c > parts_needed - (left - 1)) continue;  // cannot leave >= 1 per slot
                if (c + (left - 1) * (d - 1) < parts_needed) continue;
                pick.push_back(i);
                self(self, i, left - 1, parts_needed - c);
                pick.pop_back();
            }
        };
        rec(rec, 0, n, (n - 2) * d + 2);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace oneform
