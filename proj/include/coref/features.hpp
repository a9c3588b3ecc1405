// Agreement features: assignment from the closed-class pronoun table, the
// noun lexicon and NER types, plus the compatibility test used by sieves.
#pragma once

#include "coref/lexicon.hpp"
#include "coref/types.hpp"

namespace coref {

// Pronouns come from the closed-class table; nouns from the lexicon plus
// number/gender hints in rich POS tags; names from their NER type (PER ->
// animate). Anything without evidence stays unknown. Only pronouns assert
// person, so "ik" never hard-conflicts with a noun antecedent on person.
inline AgreementFeatures assign_features(const Mention& mention, const Sentence& sent,
                                         const Resources& res) {
    AgreementFeatures f;
    int head = mention.head >= 0 ? mention.head : mention.end;
    if (head >= sent.size()) return f;
    const Token& tok = sent.tokens[head];

    if (res.policy.is_pronoun(tok.pos) || mention.type == SurfaceType::pronoun) {
        AgreementFeatures p;
        if (pronoun_features(tok.form, p)) return p;
        return f;
    }

    for (const NerSpan& n : sent.ner_spans)
        if (n.start <= head && head <= n.end) {
            std::string label = util::lower(n.label);
            if (label.find("per") != std::string::npos)
                f.animacy = Animacy::animate;
            else if (label.find("loc") != std::string::npos ||
                     label.find("gpe") != std::string::npos ||
                     label.find("org") != std::string::npos)
                f.animacy = Animacy::inanimate;
            f.number = res.policy.number_hint(tok.pos);
            return f;
        }

    if (const NounEntry* e = res.nouns.lookup(tok.form)) {
        f.gender = e->gender;
        f.animacy = e->animacy;
    }
    if (f.gender == Gender::unknown) f.gender = res.policy.gender_hint(tok.pos);
    f.number = res.policy.number_hint(tok.pos);
    return f;
}

namespace detail {

template <typename T>
bool field_conflict(T a, T b) {
    return a != T::unknown && b != T::unknown && a != b;
}

inline bool gender_exception(const AgreementFeatures& noun, const AgreementFeatures& pron) {
    // animate neuter nouns ("het meisje") accept masc/fem pronouns:
    // biological gender overrides linguistic gender
    return noun.gender == Gender::neuter && noun.animacy == Animacy::animate &&
           (pron.gender == Gender::masc || pron.gender == Gender::fem);
}

}  // namespace detail

// True iff no field holds two distinct known values, modulo the
// biological/linguistic gender exception.
inline bool compatible(const AgreementFeatures& a, const AgreementFeatures& b) {
    if (detail::field_conflict(a.gender, b.gender) && !detail::gender_exception(a, b) &&
        !detail::gender_exception(b, a))
        return false;
    if (detail::field_conflict(a.number, b.number)) return false;
    if (detail::field_conflict(a.animacy, b.animacy)) return false;
    if (detail::field_conflict(a.person, b.person)) return false;
    return true;
}

// Accumulation for entity features: unknown unifies, agreement keeps the
// value, the gender exception keeps the noun side (neuter+animate), and any
// remaining hard conflict dissolves to unknown so an entity never asserts
// two definite values at once.
inline AgreementFeatures merge_features(const AgreementFeatures& a,
                                        const AgreementFeatures& b) {
    AgreementFeatures out;
    auto pick = [](auto x, auto y) {
        using T = decltype(x);
        if (x == T::unknown) return y;
        if (y == T::unknown || x == y) return x;
        return T::unknown;
    };
    if (detail::gender_exception(a, b))
        out.gender = Gender::neuter;
    else if (detail::gender_exception(b, a))
        out.gender = Gender::neuter;
    else
        out.gender = pick(a.gender, b.gender);
    out.number = pick(a.number, b.number);
    out.animacy = pick(a.animacy, b.animacy);
    out.person = pick(a.person, b.person);
    return out;
}

}  // namespace coref
