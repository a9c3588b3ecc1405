// Error analysis: attributes the difference between a system and a gold
// entity set to a typed error sequence whose replay turns the system set
// into gold. Fixed precedence: span errors, extra mentions/entities,
// conflated entities, divided entities, missing mentions/entities. The
// precedence order is part of the external contract -- changing it changes
// the counts.
//
// Mentions must carry heads and surface types (see enrich_mentions) before
// analysis; span errors require head identity, and the breakdowns group by
// surface type.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coref/metrics.hpp"
#include "coref/types.hpp"
#include "coref/util.hpp"

namespace coref {

enum class ErrorKind {
    span_error,
    conflated_entities,
    extra_mention,
    extra_entity,
    divided_entity,
    missing_mention,
    missing_entity,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::span_error: return "span_error";
        case ErrorKind::conflated_entities: return "conflated_entities";
        case ErrorKind::extra_mention: return "extra_mention";
        case ErrorKind::extra_entity: return "extra_entity";
        case ErrorKind::divided_entity: return "divided_entity";
        case ErrorKind::missing_mention: return "missing_mention";
        default: return "missing_entity";
    }
}

inline const std::array<ErrorKind, 7>& error_kind_order() {
    // Table column order of the error report
    static const std::array<ErrorKind, 7> order{
        ErrorKind::span_error,      ErrorKind::conflated_entities,
        ErrorKind::extra_mention,   ErrorKind::extra_entity,
        ErrorKind::divided_entity,  ErrorKind::missing_mention,
        ErrorKind::missing_entity};
    return order;
}

struct ErrorRecord {
    ErrorKind kind;
    std::string doc_id;
    std::vector<Mention> part;  // the mentions directly at fault
    std::vector<Mention> rest;  // context: corrected span, rest of entity, anchors
};

struct ErrorLog {
    std::vector<ErrorRecord> records;

    std::map<ErrorKind, long> counts() const {
        std::map<ErrorKind, long> c;
        for (ErrorKind k : error_kind_order()) c[k] = 0;
        for (const auto& r : records) ++c[r.kind];
        return c;
    }
};

namespace detail {

using Cluster = std::vector<Mention>;

inline std::vector<Cluster> to_clusters(const EntitySet& set) {
    std::vector<Cluster> out;
    for (const auto& e : set.entities)
        if (!e.mentions.empty()) out.push_back(e.mentions);
    return out;
}

inline EntitySet to_entity_set(const std::vector<Cluster>& clusters) {
    EntitySet set;
    int id = 0;
    for (const auto& c : clusters) {
        if (c.empty()) continue;
        Entity e;
        e.id = id++;
        e.mentions = c;
        std::sort(e.mentions.begin(), e.mentions.end(),
                  [](const Mention& a, const Mention& b) { return a.key() < b.key(); });
        set.entities.push_back(std::move(e));
    }
    return set;
}

inline bool spans_overlap(const Mention& a, const Mention& b) {
    return a.sentence == b.sentence && a.start <= b.end && b.start <= a.end;
}

}  // namespace detail

// Set-of-keysets view; the unit replay completeness is checked against.
inline std::set<std::set<MentionKey>> partition_keysets(const EntitySet& set) {
    std::set<std::set<MentionKey>> out;
    for (const auto& e : set.entities) {
        if (e.mentions.empty()) continue;
        std::set<MentionKey> keys;
        for (const auto& m : e.mentions) keys.insert(m.key());
        out.insert(std::move(keys));
    }
    return out;
}

inline ErrorLog analyze(const EntitySet& gold_in, const EntitySet& sys_in,
                        bool ignore_singletons = true, const std::string& doc_id = {}) {
    ErrorLog log;
    auto emit = [&](ErrorKind kind, std::vector<Mention> part, std::vector<Mention> rest) {
        log.records.push_back({kind, doc_id, std::move(part), std::move(rest)});
    };

    EntitySet gold_f = ignore_singletons ? filter_singletons(gold_in) : gold_in;
    EntitySet sys_f = ignore_singletons ? filter_singletons(sys_in) : sys_in;
    std::vector<detail::Cluster> gold = detail::to_clusters(gold_f);
    std::vector<detail::Cluster> sys = detail::to_clusters(sys_f);

    std::map<MentionKey, std::pair<int, int>> gold_at;  // key -> (cluster, position)
    for (size_t g = 0; g < gold.size(); ++g)
        for (size_t p = 0; p < gold[g].size(); ++p)
            gold_at[gold[g][p].key()] = {static_cast<int>(g), static_cast<int>(p)};

    auto sys_keys = [&]() {
        std::set<MentionKey> keys;
        for (const auto& c : sys)
            for (const auto& m : c) keys.insert(m.key());
        return keys;
    };

    // 1. span errors: same sentence + same head + overlapping but different
    //    boundaries -> repaired in place, counted once
    {
        std::set<MentionKey> current = sys_keys();
        std::set<MentionKey> repaired_gold;
        for (auto& cluster : sys)
            for (auto& m : cluster) {
                if (gold_at.count(m.key())) continue;
                if (m.head < 0) continue;
                const Mention* fix = nullptr;
                for (const auto& [key, at] : gold_at) {
                    const Mention& g = gold[at.first][at.second];
                    if (g.sentence != m.sentence || g.head != m.head) continue;
                    if (!detail::spans_overlap(g, m)) continue;
                    if (g.key() == m.key()) continue;
                    if (current.count(g.key())) continue;      // span already produced
                    if (repaired_gold.count(g.key())) continue;  // one repair per target
                    fix = &g;
                    break;
                }
                if (!fix) continue;
                emit(ErrorKind::span_error, {m}, {*fix});
                current.erase(m.key());
                repaired_gold.insert(fix->key());
                m = *fix;
                current.insert(m.key());
            }
    }

    // 2. extra mentions / extra entities
    {
        std::vector<detail::Cluster> kept;
        for (auto& cluster : sys) {
            detail::Cluster matched, unmatched;
            for (auto& m : cluster)
                (gold_at.count(m.key()) ? matched : unmatched).push_back(m);
            if (matched.empty()) {
                if (!unmatched.empty()) emit(ErrorKind::extra_entity, unmatched, {});
                continue;
            }
            for (const auto& m : unmatched) emit(ErrorKind::extra_mention, {m}, {});
            kept.push_back(std::move(matched));
        }
        sys = std::move(kept);
    }

    // 3. conflated entities: one error per extra gold entity covered
    {
        std::vector<detail::Cluster> next;
        for (auto& cluster : sys) {
            std::map<int, detail::Cluster> groups;
            for (const auto& m : cluster) groups[gold_at[m.key()].first].push_back(m);
            if (groups.size() <= 1) {
                next.push_back(std::move(cluster));
                continue;
            }
            std::vector<detail::Cluster> parts;
            for (auto& [g, ms] : groups) parts.push_back(std::move(ms));
            std::sort(parts.begin(), parts.end(),
                      [](const detail::Cluster& a, const detail::Cluster& b) {
                          if (a.size() != b.size()) return a.size() > b.size();
                          return a.front().key() < b.front().key();
                      });
            for (size_t p = 1; p < parts.size(); ++p) {
                detail::Cluster rest;
                for (const auto& m : cluster)
                    if (std::none_of(parts[p].begin(), parts[p].end(),
                                     [&](const Mention& x) { return x.key() == m.key(); }))
                        rest.push_back(m);
                emit(ErrorKind::conflated_entities, parts[p], rest);
            }
            for (auto& p : parts) next.push_back(std::move(p));
        }
        sys = std::move(next);
    }

    // 4. divided entities: one error per extra system part
    {
        std::map<int, std::vector<size_t>> parts_of;  // gold cluster -> sys cluster indices
        for (size_t c = 0; c < sys.size(); ++c)
            parts_of[gold_at[sys[c].front().key()].first].push_back(c);
        std::set<size_t> absorbed;
        for (auto& [g, part_idx] : parts_of) {
            if (part_idx.size() <= 1) continue;
            std::sort(part_idx.begin(), part_idx.end(), [&](size_t a, size_t b) {
                if (sys[a].size() != sys[b].size()) return sys[a].size() > sys[b].size();
                return sys[a].front().key() < sys[b].front().key();
            });
            size_t main = part_idx[0];
            for (size_t i = 1; i < part_idx.size(); ++i) {
                size_t p = part_idx[i];
                std::set<MentionKey> part_keys;
                for (const auto& m : sys[p]) part_keys.insert(m.key());
                detail::Cluster rest;
                for (const auto& m : gold[static_cast<size_t>(g)])
                    if (!part_keys.count(m.key())) rest.push_back(m);
                emit(ErrorKind::divided_entity, sys[p], rest);
                for (auto& m : sys[p]) sys[main].push_back(std::move(m));
                sys[p].clear();
                absorbed.insert(p);
            }
        }
        std::vector<detail::Cluster> next;
        for (size_t c = 0; c < sys.size(); ++c)
            if (!absorbed.count(c)) next.push_back(std::move(sys[c]));
        sys = std::move(next);
    }

    // 5. missing mentions / missing entities
    {
        std::set<MentionKey> current = sys_keys();
        for (size_t g = 0; g < gold.size(); ++g) {
            detail::Cluster present, absent;
            for (const auto& m : gold[g])
                (current.count(m.key()) ? present : absent).push_back(m);
            if (absent.empty()) continue;
            if (present.empty()) {
                emit(ErrorKind::missing_entity, gold[g], {});
                sys.push_back(gold[g]);
                continue;
            }
            for (const auto& m : absent) {
                emit(ErrorKind::missing_mention, {m}, present);
                for (auto& cluster : sys)
                    if (std::any_of(cluster.begin(), cluster.end(), [&](const Mention& x) {
                            return x.key() == present.front().key();
                        })) {
                        cluster.push_back(m);
                        break;
                    }
            }
        }
    }

    return log;
}

// Replays a log on a system entity set (filter singletons first when the log
// was produced with ignore_singletons). Applying the full log yields the
// gold partition.
inline EntitySet apply_log(const EntitySet& sys_in, const ErrorLog& log) {
    std::vector<detail::Cluster> sys = detail::to_clusters(sys_in);

    auto locate = [&](const MentionKey& key) -> std::pair<int, int> {
        for (size_t c = 0; c < sys.size(); ++c)
            for (size_t p = 0; p < sys[c].size(); ++p)
                if (sys[c][p].key() == key) return {static_cast<int>(c), static_cast<int>(p)};
        return {-1, -1};
    };

    for (const auto& r : log.records) {
        switch (r.kind) {
            case ErrorKind::span_error: {
                auto [c, p] = locate(r.part.front().key());
                if (c >= 0) sys[static_cast<size_t>(c)][static_cast<size_t>(p)] = r.rest.front();
                break;
            }
            case ErrorKind::extra_mention: {
                auto [c, p] = locate(r.part.front().key());
                if (c >= 0)
                    sys[static_cast<size_t>(c)].erase(sys[static_cast<size_t>(c)].begin() + p);
                break;
            }
            case ErrorKind::extra_entity: {
                std::set<MentionKey> keys;
                for (const auto& m : r.part) keys.insert(m.key());
                for (size_t c = 0; c < sys.size(); ++c) {
                    std::set<MentionKey> have;
                    for (const auto& m : sys[c]) have.insert(m.key());
                    if (have == keys) {
                        sys.erase(sys.begin() + static_cast<long>(c));
                        break;
                    }
                }
                break;
            }
            case ErrorKind::conflated_entities: {
                detail::Cluster split;
                for (const auto& m : r.part) {
                    auto [c, p] = locate(m.key());
                    if (c < 0) continue;
                    split.push_back(sys[static_cast<size_t>(c)][static_cast<size_t>(p)]);
                    sys[static_cast<size_t>(c)].erase(sys[static_cast<size_t>(c)].begin() + p);
                }
                if (!split.empty()) sys.push_back(std::move(split));
                break;
            }
            case ErrorKind::divided_entity: {
                auto [pc, pp] = locate(r.part.front().key());
                int target = -1;
                for (const auto& anchor : r.rest) {
                    auto [c, p] = locate(anchor.key());
                    if (c >= 0 && c != pc) {
                        target = c;
                        break;
                    }
                }
                if (pc >= 0 && target >= 0) {
                    for (auto& m : sys[static_cast<size_t>(pc)])
                        sys[static_cast<size_t>(target)].push_back(std::move(m));
                    sys.erase(sys.begin() + pc);
                }
                break;
            }
            case ErrorKind::missing_mention: {
                auto [c, p] = locate(r.rest.front().key());
                if (c >= 0)
                    sys[static_cast<size_t>(c)].push_back(r.part.front());
                else
                    sys.push_back({r.part.front()});
                break;
            }
            case ErrorKind::missing_entity:
                sys.push_back(r.part);
                break;
        }
        std::erase_if(sys, [](const detail::Cluster& c) { return c.empty(); });
    }
    return detail::to_entity_set(sys);
}

// ---- breakdowns ------------------------------------------------------------

// Table "missing and extra mention errors by mention type":
// rows name/nominal/pronoun, columns missing/extra.
struct MentionTypeBreakdown {
    // [type][0] = missing, [type][1] = extra; order name, nominal, pronoun
    std::array<std::array<long, 2>, 3> cells{};

    long& at(SurfaceType t, bool extra) {
        return cells[static_cast<size_t>(t)][extra ? 1 : 0];
    }
    long at(SurfaceType t, bool extra) const {
        return cells[static_cast<size_t>(t)][extra ? 1 : 0];
    }
};

inline MentionTypeBreakdown breakdown_by_mention_type(const ErrorLog& log) {
    MentionTypeBreakdown b;
    for (const auto& r : log.records) {
        if (r.kind == ErrorKind::missing_mention)
            ++b.at(r.part.front().type, false);
        else if (r.kind == ErrorKind::extra_mention)
            ++b.at(r.part.front().type, true);
    }
    return b;
}

// Composition grid for divided/conflated errors: whether the incorrect part
// and the rest of the entity contain at least one name / nominal / pronoun.
struct CompositionKey {
    bool inc_name = false, inc_nom = false, inc_pron = false;
    bool rest_name = false, rest_nom = false, rest_pron = false;

    auto operator<=>(const CompositionKey&) const = default;
};

inline const std::array<CompositionKey, 8>& composition_grid_rows() {
    // the eight configurations listed in the reference grid; everything else
    // lands in "Other"
    static const std::array<CompositionKey, 8> rows{{
        {false, false, true, false, true, true},
        {false, false, true, true, true, true},
        {false, false, true, false, true, false},
        {false, true, false, false, true, false},
        {false, true, true, false, true, true},
        {false, true, false, false, true, true},
        {false, true, true, true, true, true},
        {false, false, true, false, false, true},
    }};
    return rows;
}

struct CompositionBreakdown {
    // (divided, conflated) counts per listed row, plus the catch-all
    std::array<std::pair<long, long>, 8> listed{};
    std::pair<long, long> other{0, 0};
};

inline CompositionBreakdown composition_breakdown(const ErrorLog& log) {
    CompositionBreakdown out;
    auto flags = [](const std::vector<Mention>& ms, bool& name, bool& nom, bool& pron) {
        for (const auto& m : ms) {
            if (m.type == SurfaceType::name) name = true;
            if (m.type == SurfaceType::nominal) nom = true;
            if (m.type == SurfaceType::pronoun) pron = true;
        }
    };
    for (const auto& r : log.records) {
        if (r.kind != ErrorKind::divided_entity && r.kind != ErrorKind::conflated_entities)
            continue;
        CompositionKey key;
        flags(r.part, key.inc_name, key.inc_nom, key.inc_pron);
        flags(r.rest, key.rest_name, key.rest_nom, key.rest_pron);
        bool divided = r.kind == ErrorKind::divided_entity;
        bool listed = false;
        for (size_t i = 0; i < composition_grid_rows().size(); ++i)
            if (composition_grid_rows()[i] == key) {
                (divided ? out.listed[i].first : out.listed[i].second) += 1;
                listed = true;
                break;
            }
        if (!listed) (divided ? out.other.first : out.other.second) += 1;
    }
    return out;
}

// ---- rendering ---------------------------------------------------------------

inline std::string format_error_table(const std::map<ErrorKind, long>& counts,
                                      const std::string& label = {}) {
    std::string out;
    if (!label.empty()) out += "# " + label + "\n";
    util::TextTable t;
    t.add_row({"Span Error", "Conflated Entities", "Extra Mention", "Extra Entity",
               "Divided Entity", "Missing Mention", "Missing Entity"});
    std::vector<std::string> row;
    for (ErrorKind k : error_kind_order()) {
        auto it = counts.find(k);
        row.push_back(std::to_string(it == counts.end() ? 0 : it->second));
    }
    t.add_row(row);
    out += t.render({0, 1, 2, 3, 4, 5, 6});
    return out;
}

inline std::string format_mention_type_breakdown(const MentionTypeBreakdown& b) {
    util::TextTable t;
    t.add_row({"error", "name", "nominal", "pronoun"});
    t.add_row({"extra", std::to_string(b.at(SurfaceType::name, true)),
               std::to_string(b.at(SurfaceType::nominal, true)),
               std::to_string(b.at(SurfaceType::pronoun, true))});
    t.add_row({"missing", std::to_string(b.at(SurfaceType::name, false)),
               std::to_string(b.at(SurfaceType::nominal, false)),
               std::to_string(b.at(SurfaceType::pronoun, false))});
    return t.render({1, 2, 3});
}

inline std::string format_composition_breakdown(const CompositionBreakdown& b) {
    util::TextTable t;
    t.add_row({"Na", "No", "Pr", "Na", "No", "Pr", "Divided", "Conflated"});
    auto mark = [](bool v) { return v ? std::string("1+") : std::string("-"); };
    for (size_t i = 0; i < composition_grid_rows().size(); ++i) {
        const CompositionKey& k = composition_grid_rows()[i];
        t.add_row({mark(k.inc_name), mark(k.inc_nom), mark(k.inc_pron), mark(k.rest_name),
                   mark(k.rest_nom), mark(k.rest_pron), std::to_string(b.listed[i].first),
                   std::to_string(b.listed[i].second)});
    }
    t.add_row({"Other", "", "", "", "", "", std::to_string(b.other.first),
               std::to_string(b.other.second)});
    return t.render({6, 7});
}

// one record per line: kind, doc id, part spans, '|' separator, rest spans
inline std::string error_log_lines(const ErrorLog& log) {
    std::string out;
    auto span = [](const Mention& m) {
        return util::strprintf("%d:%d-%d", m.sentence, m.start, m.end);
    };
    for (const auto& r : log.records) {
        out += to_string(r.kind);
        out += '\t';
        out += r.doc_id;
        for (const auto& m : r.part) out += '\t' + span(m);
        if (!r.rest.empty()) {
            out += "\t|";
            for (const auto& m : r.rest) out += '\t' + span(m);
        }
        out += '\n';
    }
    return out;
}

}  // namespace coref
