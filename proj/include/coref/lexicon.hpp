// Tag policy, feature lexicons and word lists used by mention detection and
// the sieve resolver. Everything ships with Dutch defaults (CGN/Lassy tags,
// Alpino-style lowercase tags and PTB/UD tags are all recognized) and can be
// overridden from plain-text data files.
#pragma once

#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coref/types.hpp"
#include "coref/util.hpp"

namespace coref {

// POS tags are matched on their lowercased head, i.e. the part before the
// first '(' — "VNW(pers,pron,...)" has head "vnw".
inline std::string tag_head(const std::string& pos) {
    auto cut = pos.find('(');
    return util::lower(cut == std::string::npos ? pos : pos.substr(0, cut));
}

struct TagPolicy {
    std::set<std::string> np_labels{"np", "nml"};
    std::set<std::string> pp_labels{"pp"};
    std::set<std::string> relclause_labels{"rel", "whrel", "cp", "sbar", "ssub", "whsub", "ti", "oti"};
    std::set<std::string> pronoun_pos{"vnw", "pron", "prp", "prp$", "wp", "wp$"};
    std::set<std::string> proper_pos{"spec", "name", "eigen", "nnp", "nnps", "propn"};
    std::set<std::string> noun_pos{"n", "noun", "nn", "nns"};
    std::set<std::string> verb_pos{"ww", "verb", "aux", "vb", "vbd", "vbz", "vbp", "vbn", "vbg", "md"};
    std::set<std::string> prep_pos{"vz", "prep", "in", "adp"};
    std::set<std::string> det_pos{"lid", "det", "dt"};
    std::set<std::string> conj_pos{"vg", "conj", "cc", "cconj", "sconj"};
    std::set<std::string> punct_pos{"let", "punct", ".", ",", ":", "``", "''", "-lrb-", "-rrb-"};

    bool is_np_label(const std::string& label) const {
        return np_labels.count(util::lower(label)) > 0;
    }
    bool is_pp_label(const std::string& label) const {
        return pp_labels.count(util::lower(label)) > 0;
    }
    bool is_relclause_label(const std::string& label) const {
        return relclause_labels.count(util::lower(label)) > 0;
    }
    bool is_pronoun(const std::string& pos) const { return pronoun_pos.count(tag_head(pos)) > 0; }
    bool is_proper(const std::string& pos) const {
        if (proper_pos.count(tag_head(pos))) return true;
        // CGN proper nouns look like N(eigen,...) or SPEC(deeleigen)
        return util::lower(pos).find("eigen") != std::string::npos;
    }
    bool is_noun(const std::string& pos) const { return noun_pos.count(tag_head(pos)) > 0; }
    bool is_verb(const std::string& pos) const { return verb_pos.count(tag_head(pos)) > 0; }
    bool is_prep(const std::string& pos) const { return prep_pos.count(tag_head(pos)) > 0; }
    bool is_det(const std::string& pos) const { return det_pos.count(tag_head(pos)) > 0; }
    bool is_conj(const std::string& pos) const { return conj_pos.count(tag_head(pos)) > 0; }
    bool is_punct(const std::string& pos) const { return punct_pos.count(tag_head(pos)) > 0; }
    bool is_nominal_tag(const std::string& pos) const {
        return is_noun(pos) || is_proper(pos) || is_pronoun(pos);
    }

    // Number/gender hints carried inside rich CGN-style tags.
    GrNumber number_hint(const std::string& pos) const {
        std::string p = util::lower(pos);
        if (p.find("ev") != std::string::npos && p.find("mv") == std::string::npos)
            return GrNumber::sg;
        if (p.find("mv") != std::string::npos && p.find("ev") == std::string::npos)
            return GrNumber::pl;
        return GrNumber::unknown;
    }
    Gender gender_hint(const std::string& pos) const {
        std::string p = util::lower(pos);
        if (p.find("onz") != std::string::npos) return Gender::neuter;
        return Gender::unknown;
    }
};

// Replaces categories of a TagPolicy from a tab-separated file:
//   category<TAB>value value value...
// Unknown categories are an error; '#' starts a comment.
inline void load_tag_policy(std::istream& in, TagPolicy& policy) {
    std::map<std::string, std::set<std::string>*> cats{
        {"np_label", &policy.np_labels},       {"pp_label", &policy.pp_labels},
        {"relclause_label", &policy.relclause_labels},
        {"pronoun_pos", &policy.pronoun_pos},  {"proper_pos", &policy.proper_pos},
        {"noun_pos", &policy.noun_pos},        {"verb_pos", &policy.verb_pos},
        {"prep_pos", &policy.prep_pos},        {"det_pos", &policy.det_pos},
        {"conj_pos", &policy.conj_pos},        {"punct_pos", &policy.punct_pos}};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto fields = util::split_ws(line);
        if (fields.empty()) continue;
        auto it = cats.find(fields[0]);
        if (it == cats.end())
            throw data_error("unknown tag policy category '" + fields[0] + "'");
        it->second->clear();
        for (size_t i = 1; i < fields.size(); ++i) it->second->insert(util::lower(fields[i]));
    }
}

struct NounEntry {
    Gender gender = Gender::unknown;
    Animacy animacy = Animacy::unknown;
};

// Noun form -> grammatical gender + animacy. Small built-in core; extendable
// from "form<TAB>gender<TAB>animacy" lines.
class NounLexicon {
  public:
    const NounEntry* lookup(const std::string& form) const {
        auto it = entries_.find(util::lower(form));
        return it == entries_.end() ? nullptr : &it->second;
    }

    void add(const std::string& form, NounEntry entry) {
        entries_[util::lower(form)] = entry;
    }

    void load(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            auto fields = util::split_ws(line);
            if (fields.empty()) continue;
            if (fields.size() < 3)
                throw data_error("noun lexicon line needs form, gender, animacy: " + line);
            NounEntry e;
            e.gender = gender_from(fields[1]);
            e.animacy = animacy_from(fields[2]);
            add(fields[0], e);
        }
    }

    static Gender gender_from(const std::string& s) {
        std::string v = util::lower(s);
        if (v == "masc" || v == "m") return Gender::masc;
        if (v == "fem" || v == "f") return Gender::fem;
        if (v == "neuter" || v == "n" || v == "onz") return Gender::neuter;
        if (v == "unknown" || v == "-" || v == "common" || v == "zijd") return Gender::unknown;
        throw data_error("unknown gender value '" + s + "'");
    }

    static Animacy animacy_from(const std::string& s) {
        std::string v = util::lower(s);
        if (v == "animate" || v == "anim" || v == "a") return Animacy::animate;
        if (v == "inanimate" || v == "inanim" || v == "i") return Animacy::inanimate;
        if (v == "unknown" || v == "-") return Animacy::unknown;
        throw data_error("unknown animacy value '" + s + "'");
    }

  private:
    std::map<std::string, NounEntry> entries_;
};

// One pattern per line; tokens are matched on lowercased forms and "..."
// matches any (possibly empty) token gap. Single-word lines act as trigger
// words near the pronoun.
class PatternList {
  public:
    void load(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            auto fields = util::split_ws(line);
            if (fields.empty()) continue;
            std::vector<std::string> pat;
            for (auto& f : fields) pat.push_back(util::lower(f));
            patterns_.push_back(std::move(pat));
        }
    }

    void add(std::initializer_list<const char*> words) {
        std::vector<std::string> pat;
        for (const char* w : words) pat.push_back(w);
        patterns_.push_back(std::move(pat));
    }

    bool empty() const { return patterns_.empty(); }

    // true when any pattern matches inside `forms` starting at or after `from`
    bool matches_after(const std::vector<std::string>& forms, size_t from) const {
        for (const auto& pat : patterns_)
            for (size_t at = from; at < forms.size(); ++at)
                if (match_at(pat, 0, forms, at)) return true;
        return false;
    }

  private:
    static bool match_at(const std::vector<std::string>& pat, size_t pi,
                         const std::vector<std::string>& forms, size_t fi) {
        if (pi == pat.size()) return true;
        if (pat[pi] == "...") {
            for (size_t skip = fi; skip <= forms.size(); ++skip)
                if (match_at(pat, pi + 1, forms, skip)) return true;
            return false;
        }
        if (fi >= forms.size()) return false;
        if (util::lower(forms[fi]) != pat[pi]) return false;
        return match_at(pat, pi + 1, forms, fi + 1);
    }

    std::vector<std::vector<std::string>> patterns_;
};

// Everything the detection/resolution pipeline needs besides the document.
struct Resources {
    TagPolicy policy;
    NounLexicon nouns;
    PatternList pleonastic;
    std::set<std::string> speech_verbs;
    std::set<std::string> articles{"de", "het", "een"};
    std::set<std::string> copulas{"is",     "was",    "ben",   "bent",  "zijn",
                                  "waren",  "wordt",  "werd",  "worden", "werden",
                                  "blijft", "bleef",  "lijkt", "leek",  "heet",
                                  "heette", "bleek",  "blijkt"};
    std::set<std::string> coord_conjunctions{"en", "of", "maar", "noch"};
    // Treat ambiguous bare "het" as pleonastic (non-referring) by default.
    bool default_het_pleonastic = true;

    static Resources defaults();
};

inline Resources Resources::defaults() {
    Resources r;

    const char* animate_common[] = {
        "man",      "vrouw",     "jongen",  "meid",     "moeder",  "vader",
        "broer",    "zus",       "zoon",    "dochter",  "koning",  "koningin",
        "burgemeester", "dokter", "leraar",  "lerares",  "schrijver", "schrijfster",
        "agent",    "buurman",   "buurvrouw", "vriend",  "vriendin", "collega",
        "soldaat",  "kapitein",  "minister", "president", "artiest", "gedeputeerde",
        "hond",     "kat",       "paard"};
    const char* animate_neuter[] = {"meisje", "kind", "jongetje", "ventje", "mannetje",
                                    "vrouwtje", "meiske", "kindje", "dier", "volk"};
    const char* inanimate_common[] = {
        "stad",  "straat", "deur",  "tafel", "stoel", "auto", "fiets", "krant",
        "brief", "kamer",  "tuin",  "eeuw",  "dag",   "nacht", "week", "maand",
        "hand",  "stem",   "vraag", "zaak",  "reis",  "trein", "boot", "muur"};
    const char* inanimate_neuter[] = {
        "boek",  "huis",  "raam",   "glas",  "water", "bed",   "dorp", "land",
        "woord", "jaar",  "uur",    "geld",  "vuur",  "licht", "feest", "gezicht",
        "hoofd", "hart",  "verhaal", "plein", "schip", "vers",  "gedicht"};

    for (const char* w : animate_common) r.nouns.add(w, {Gender::unknown, Animacy::animate});
    for (const char* w : animate_neuter) r.nouns.add(w, {Gender::neuter, Animacy::animate});
    for (const char* w : inanimate_common) r.nouns.add(w, {Gender::unknown, Animacy::inanimate});
    for (const char* w : inanimate_neuter) r.nouns.add(w, {Gender::neuter, Animacy::inanimate});
    // a few gendered person nouns
    r.nouns.add("vrouw", {Gender::fem, Animacy::animate});
    r.nouns.add("moeder", {Gender::fem, Animacy::animate});
    r.nouns.add("zus", {Gender::fem, Animacy::animate});
    r.nouns.add("dochter", {Gender::fem, Animacy::animate});
    r.nouns.add("koningin", {Gender::fem, Animacy::animate});
    r.nouns.add("lerares", {Gender::fem, Animacy::animate});
    r.nouns.add("schrijfster", {Gender::fem, Animacy::animate});
    r.nouns.add("buurvrouw", {Gender::fem, Animacy::animate});
    r.nouns.add("vriendin", {Gender::fem, Animacy::animate});
    r.nouns.add("man", {Gender::masc, Animacy::animate});
    r.nouns.add("vader", {Gender::masc, Animacy::animate});
    r.nouns.add("broer", {Gender::masc, Animacy::animate});
    r.nouns.add("zoon", {Gender::masc, Animacy::animate});
    r.nouns.add("koning", {Gender::masc, Animacy::animate});
    r.nouns.add("jongen", {Gender::masc, Animacy::animate});
    r.nouns.add("buurman", {Gender::masc, Animacy::animate});
    r.nouns.add("burgemeester", {Gender::masc, Animacy::animate});

    // weather verbs and fixed expletive constructions
    for (const char* w : {"regent", "regende", "sneeuwt", "sneeuwde", "vriest", "vroor",
                          "dooit", "dooide", "hagelt", "hagelde", "waait", "waaide",
                          "onweert", "onweerde", "miezert", "stortregent", "stormt",
                          "schemert", "ijzelt"})
        r.pleonastic.add({w});
    r.pleonastic.add({"is", "...", "dat"});
    r.pleonastic.add({"is", "...", "die"});
    r.pleonastic.add({"was", "...", "dat"});
    r.pleonastic.add({"was", "...", "die"});
    r.pleonastic.add({"gaat", "om"});
    r.pleonastic.add({"komt", "erop", "aan"});
    r.pleonastic.add({"spijt"});
    r.pleonastic.add({"lijkt", "erop"});
    r.pleonastic.add({"lukt"});

    r.speech_verbs = {"zei",        "zegt",       "zeggen",    "vroeg",     "vraagt",
                      "riep",       "roept",      "antwoordde", "antwoordt", "fluisterde",
                      "fluistert",  "mompelde",   "mompelt",   "schreeuwde", "schreeuwt",
                      "zuchtte",    "zucht",      "sprak",     "spreekt",   "begon",
                      "vervolgde",  "herhaalde",  "snauwde",   "gilde",     "stamelde",
                      "merkte",     "beaamde",    "opperde",   "verklaarde", "brulde"};
    return r;
}

// Closed-class pronoun table. Returns false for forms not in the table.
inline bool pronoun_features(const std::string& form, AgreementFeatures& out) {
    static const std::map<std::string, AgreementFeatures> table = [] {
        std::map<std::string, AgreementFeatures> t;
        auto put = [&](std::initializer_list<const char*> forms, Gender g, GrNumber n,
                       Person p, Animacy a) {
            for (const char* f : forms) t[f] = AgreementFeatures{g, n, a, p};
        };
        put({"hij", "ie", "hem", "hemzelf"}, Gender::masc, GrNumber::sg, Person::p3,
            Animacy::animate);
        // "zij"/"ze" is fem-singular or plural; both stay open until context decides
        put({"zij", "ze"}, Gender::unknown, GrNumber::unknown, Person::p3, Animacy::unknown);
        put({"haar", "haarzelf"}, Gender::fem, GrNumber::sg, Person::p3, Animacy::animate);
        put({"het"}, Gender::neuter, GrNumber::sg, Person::p3, Animacy::unknown);
        put({"dit"}, Gender::neuter, GrNumber::sg, Person::p3, Animacy::unknown);
        put({"dat"}, Gender::neuter, GrNumber::unknown, Person::p3, Animacy::unknown);
        put({"die", "deze", "wie"}, Gender::unknown, GrNumber::unknown, Person::p3,
            Animacy::unknown);
        put({"ik", "mij", "me", "mijzelf", "mezelf", "mijn"}, Gender::unknown, GrNumber::sg,
            Person::p1, Animacy::animate);
        put({"wij", "we", "ons", "onze", "onszelf"}, Gender::unknown, GrNumber::pl, Person::p1,
            Animacy::animate);
        put({"jij", "je", "jou", "jouw", "jezelf"}, Gender::unknown, GrNumber::sg, Person::p2,
            Animacy::animate);
        put({"u", "uw", "uzelf"}, Gender::unknown, GrNumber::unknown, Person::p2,
            Animacy::animate);
        put({"jullie"}, Gender::unknown, GrNumber::pl, Person::p2, Animacy::animate);
        put({"hen", "hun", "henzelf"}, Gender::unknown, GrNumber::pl, Person::p3,
            Animacy::unknown);
        // possessive zijn; the verb reading is filtered out by POS upstream
        put({"zijn", "z'n"}, Gender::unknown, GrNumber::sg, Person::p3, Animacy::unknown);
        put({"men", "iemand", "niemand"}, Gender::unknown, GrNumber::sg, Person::p3,
            Animacy::animate);
        put({"iets", "niets", "alles"}, Gender::neuter, GrNumber::sg, Person::p3,
            Animacy::inanimate);
        put({"zich", "zichzelf"}, Gender::unknown, GrNumber::unknown, Person::p3,
            Animacy::unknown);
        return t;
    }();
    auto it = table.find(util::lower(form));
    if (it == table.end()) return false;
    out = it->second;
    return true;
}

inline bool is_reflexive_form(const std::string& form) {
    std::string f = util::lower(form);
    return f == "zich" || f == "zichzelf" || f == "mezelf" || f == "mijzelf" ||
           f == "jezelf" || f == "onszelf" || f == "uzelf" || f == "haarzelf" ||
           f == "hemzelf" || f == "henzelf";
}

inline bool is_relative_form(const std::string& form) {
    std::string f = util::lower(form);
    return f == "die" || f == "dat" || f == "wie" || f == "welke" || f == "hetwelk";
}

}  // namespace coref
