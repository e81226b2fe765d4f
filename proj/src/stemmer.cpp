#include "abusedet/stemmer.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "abusedet/unicode.hpp"

namespace abusedet {

namespace {

bool is_v(char32_t c) {
    switch (c) {
        case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
        case U'â': case U'à': case U'ë': case U'é':
        case U'ê': case U'è': case U'ï': case U'î':
        case U'ô': case U'û': case U'ù':
            return true;
        default:
            return false;
    }
}

bool is_keep_with_s(char32_t c) {
    switch (c) {
        case U'a': case U'i': case U'o': case U'u': case U'è': case U's':
            return true;
        default:
            return false;
    }
}

struct Among {
    std::u32string_view s;
    int action;
};

// Tables are scanned longest-first so the longest suffix wins.
std::vector<Among> sorted_by_length(std::vector<Among> v) {
    std::stable_sort(v.begin(), v.end(), [](const Among& a, const Among& b) {
        return a.s.size() > b.s.size();
    });
    return v;
}

const std::vector<Among>& table_standard() {
    static const std::vector<Among> t = sorted_by_length({
        {U"ance", 1},    {U"iqUe", 1},    {U"isme", 1},    {U"able", 1},
        {U"iste", 1},    {U"eux", 1},     {U"ances", 1},   {U"iqUes", 1},
        {U"ismes", 1},   {U"ables", 1},   {U"istes", 1},
        {U"atrice", 2},  {U"ateur", 2},   {U"ation", 2},
        {U"atrices", 2}, {U"ateurs", 2},  {U"ations", 2},
        {U"logie", 3},   {U"logies", 3},
        {U"usion", 4},   {U"ution", 4},   {U"usions", 4},  {U"utions", 4},
        {U"ence", 5},    {U"ences", 5},
        {U"ement", 6},   {U"ements", 6},
        {U"ité", 7},  {U"ités", 7},
        {U"if", 8},      {U"ive", 8},     {U"ifs", 8},     {U"ives", 8},
        {U"eaux", 9},
        {U"aux", 10},
        {U"euse", 11},   {U"euses", 11},
        {U"issement", 12}, {U"issements", 12},
        {U"amment", 13},
        {U"emment", 14},
        {U"ment", 15},   {U"ments", 15},
    });
    return t;
}

const std::vector<Among>& table_ement() {
    static const std::vector<Among> t = sorted_by_length({
        {U"iv", 1},
        {U"eus", 2},
        {U"abl", 3},
        {U"iqU", 3},
        {U"ièr", 4},
        {U"Ièr", 4},
    });
    return t;
}

const std::vector<Among>& table_ite() {
    static const std::vector<Among> t = sorted_by_length({
        {U"abil", 1},
        {U"ic", 2},
        {U"iv", 3},
    });
    return t;
}

const std::vector<Among>& table_i_verb() {
    static const std::vector<Among> t = sorted_by_length({
        {U"îmes", 1}, {U"ît", 1}, {U"îtes", 1},
        {U"i", 1},        {U"ie", 1},      {U"ies", 1},     {U"ir", 1},
        {U"ira", 1},      {U"irai", 1},    {U"iraIent", 1}, {U"irais", 1},
        {U"irait", 1},    {U"iras", 1},    {U"irent", 1},   {U"irez", 1},
        {U"iriez", 1},    {U"irions", 1},  {U"irons", 1},   {U"iront", 1},
        {U"is", 1},       {U"issaIent", 1}, {U"issais", 1}, {U"issait", 1},
        {U"issant", 1},   {U"issante", 1}, {U"issantes", 1}, {U"issants", 1},
        {U"isse", 1},     {U"issent", 1},  {U"isses", 1},   {U"issez", 1},
        {U"issiez", 1},   {U"issions", 1}, {U"issons", 1},  {U"it", 1},
    });
    return t;
}

const std::vector<Among>& table_verb() {
    static const std::vector<Among> t = sorted_by_length({
        {U"ions", 1},
        {U"é", 2},   {U"ée", 2},  {U"ées", 2},
        {U"és", 2},  {U"èrent", 2}, {U"er", 2},    {U"era", 2},
        {U"erai", 2},     {U"eraIent", 2},  {U"erais", 2},  {U"erait", 2},
        {U"eras", 2},     {U"erez", 2},     {U"eriez", 2},  {U"erions", 2},
        {U"erons", 2},    {U"eront", 2},    {U"ez", 2},     {U"iez", 2},
        {U"âmes", 3}, {U"ât", 3},  {U"âtes", 3},
        {U"a", 3},        {U"ai", 3},       {U"aIent", 3},  {U"ais", 3},
        {U"ait", 3},      {U"ant", 3},      {U"ante", 3},   {U"antes", 3},
        {U"ants", 3},     {U"as", 3},       {U"asse", 3},   {U"assent", 3},
        {U"asses", 3},    {U"assiez", 3},   {U"assions", 3},
    });
    return t;
}

const std::vector<Among>& table_residual() {
    static const std::vector<Among> t = sorted_by_length({
        {U"ion", 1},
        {U"ier", 2},  {U"ière", 2},  {U"Ier", 2},  {U"Ière", 2},
        {U"e", 3},
        {U"ë", 4},
    });
    return t;
}

const std::vector<Among>& table_double() {
    static const std::vector<Among> t = sorted_by_length({
        {U"enn", 1}, {U"onn", 1}, {U"ett", 1}, {U"ell", 1}, {U"eill", 1},
    });
    return t;
}

struct Env {
    std::u32string word;
    size_t cursor = 0;
    size_t limit = 0;
    size_t limit_backward = 0;
    size_t bra = 0;
    size_t ket = 0;
    size_t pV = 0;
    size_t p1 = 0;
    size_t p2 = 0;

    explicit Env(std::u32string w) : word(std::move(w)) { limit = word.size(); }

    bool in_grouping(bool (*g)(char32_t)) {
        if (cursor >= limit) return false;
        if (!g(word[cursor])) return false;
        ++cursor;
        return true;
    }
    bool out_grouping(bool (*g)(char32_t)) {
        if (cursor >= limit) return false;
        if (g(word[cursor])) return false;
        ++cursor;
        return true;
    }
    bool in_grouping_b(bool (*g)(char32_t)) {
        if (cursor <= limit_backward) return false;
        if (!g(word[cursor - 1])) return false;
        --cursor;
        return true;
    }
    bool out_grouping_b(bool (*g)(char32_t)) {
        if (cursor <= limit_backward) return false;
        if (g(word[cursor - 1])) return false;
        --cursor;
        return true;
    }
    bool eq_s(std::u32string_view s) {
        if (cursor + s.size() > limit) return false;
        if (word.compare(cursor, s.size(), s) != 0) return false;
        cursor += s.size();
        return true;
    }
    bool eq_s_b(std::u32string_view s) {
        if (cursor < limit_backward + s.size()) return false;
        if (word.compare(cursor - s.size(), s.size(), s) != 0) return false;
        cursor -= s.size();
        return true;
    }
    void slice_from(std::u32string_view s) {
        long adj = static_cast<long>(s.size()) - static_cast<long>(ket - bra);
        word.replace(bra, ket - bra, s);
        limit = static_cast<size_t>(static_cast<long>(limit) + adj);
        if (cursor >= ket) {
            cursor = static_cast<size_t>(static_cast<long>(cursor) + adj);
        } else if (cursor > bra) {
            cursor = bra;
        }
    }
    void slice_del() { slice_from(U""); }

    int find_among_b(const std::vector<Among>& t) {
        for (const auto& a : t) {
            size_t n = a.s.size();
            if (cursor < limit_backward + n) continue;
            if (word.compare(cursor - n, n, a.s) == 0) {
                cursor -= n;
                return a.action;
            }
        }
        return 0;
    }

    bool rv() const { return pV <= cursor; }
    bool r1() const { return p1 <= cursor; }
    bool r2() const { return p2 <= cursor; }
};

void prelude(Env& e) {
    for (;;) {
        size_t start = e.cursor;
        bool moved = false;
        // goto: scan right for a position where one of the rewrites applies.
        for (;;) {
            size_t pos = e.cursor;
            bool hit = false;
            do {
                size_t alt = e.cursor;
                if (e.in_grouping(is_v)) {
                    e.bra = e.cursor;
                    size_t v4 = e.cursor;
                    if (e.eq_s(U"u")) {
                        e.ket = e.cursor;
                        if (e.in_grouping(is_v)) {
                            e.slice_from(U"U");
                            hit = true;
                            break;
                        }
                    }
                    e.cursor = v4;
                    if (e.eq_s(U"i")) {
                        e.ket = e.cursor;
                        if (e.in_grouping(is_v)) {
                            e.slice_from(U"I");
                            hit = true;
                            break;
                        }
                    }
                    e.cursor = v4;
                    if (e.eq_s(U"y")) {
                        e.ket = e.cursor;
                        e.slice_from(U"Y");
                        hit = true;
                        break;
                    }
                }
                e.cursor = alt;
                e.bra = e.cursor;
                if (e.eq_s(U"y")) {
                    e.ket = e.cursor;
                    if (e.in_grouping(is_v)) {
                        e.slice_from(U"Y");
                        hit = true;
                        break;
                    }
                }
                e.cursor = alt;
                if (e.eq_s(U"q")) {
                    e.bra = e.cursor;
                    if (e.eq_s(U"u")) {
                        e.ket = e.cursor;
                        e.slice_from(U"U");
                        hit = true;
                        break;
                    }
                }
            } while (false);
            if (hit) {
                e.cursor = pos;
                moved = true;
                break;
            }
            e.cursor = pos;
            if (e.cursor >= e.limit) break;
            ++e.cursor;
        }
        if (!moved) {
            e.cursor = start;
            break;
        }
    }
}

void mark_regions(Env& e) {
    e.pV = e.limit;
    e.p1 = e.limit;
    e.p2 = e.limit;
    size_t v1 = e.cursor;
    size_t v2 = e.cursor;
    bool ok = false;
    if (e.in_grouping(is_v) && e.in_grouping(is_v) && e.cursor < e.limit) {
        ++e.cursor;
        ok = true;
    }
    if (!ok) {
        e.cursor = v2;
        for (std::u32string_view p : {U"col", U"par", U"tap"}) {
            if (e.eq_s(p)) {
                ok = true;
                break;
            }
        }
    }
    if (!ok) {
        e.cursor = v2;
        if (e.cursor < e.limit) {
            ++e.cursor;
            for (;;) {
                if (e.in_grouping(is_v)) {
                    ok = true;
                    break;
                }
                if (e.cursor >= e.limit) break;
                ++e.cursor;
            }
        }
    }
    if (ok) e.pV = e.cursor;
    e.cursor = v1;

    size_t v4 = e.cursor;
    auto gopast_in = [&]() {
        for (;;) {
            if (e.in_grouping(is_v)) return true;
            if (e.cursor >= e.limit) return false;
            ++e.cursor;
        }
    };
    auto gopast_out = [&]() {
        for (;;) {
            if (e.out_grouping(is_v)) return true;
            if (e.cursor >= e.limit) return false;
            ++e.cursor;
        }
    };
    if (gopast_in() && gopast_out()) {
        e.p1 = e.cursor;
        if (gopast_in() && gopast_out()) e.p2 = e.cursor;
    }
    e.cursor = v4;
}

void postlude(Env& e) {
    for (char32_t& c : e.word) {
        if (c == U'I') c = U'i';
        else if (c == U'U') c = U'u';
        else if (c == U'Y') c = U'y';
    }
}

bool standard_suffix(Env& e) {
    e.ket = e.cursor;
    int var = e.find_among_b(table_standard());
    if (var == 0) return false;
    e.bra = e.cursor;
    switch (var) {
        case 1:
            if (!e.r2()) return false;
            e.slice_del();
            break;
        case 2: {
            if (!e.r2()) return false;
            e.slice_del();
            size_t v1 = e.limit - e.cursor;
            e.ket = e.cursor;
            if (e.eq_s_b(U"ic")) {
                e.bra = e.cursor;
                size_t v2 = e.limit - e.cursor;
                if (e.r2()) {
                    e.slice_del();
                } else {
                    e.cursor = e.limit - v2;
                    e.slice_from(U"iqU");
                }
            } else {
                e.cursor = e.limit - v1;
            }
            break;
        }
        case 3:
            if (!e.r2()) return false;
            e.slice_from(U"log");
            break;
        case 4:
            if (!e.r2()) return false;
            e.slice_from(U"u");
            break;
        case 5:
            if (!e.r2()) return false;
            e.slice_from(U"ent");
            break;
        case 6: {
            if (!e.rv()) return false;
            e.slice_del();
            size_t v3 = e.limit - e.cursor;
            e.ket = e.cursor;
            int sub = e.find_among_b(table_ement());
            bool keep = false;
            if (sub != 0) {
                e.bra = e.cursor;
                switch (sub) {
                    case 1:
                        if (e.r2()) {
                            e.slice_del();
                            e.ket = e.cursor;
                            if (e.eq_s_b(U"at")) {
                                e.bra = e.cursor;
                                if (e.r2()) {
                                    e.slice_del();
                                    keep = true;
                                }
                            }
                        }
                        break;
                    case 2: {
                        size_t v4 = e.limit - e.cursor;
                        if (e.r2()) {
                            e.slice_del();
                            keep = true;
                        } else {
                            e.cursor = e.limit - v4;
                            if (e.r1()) {
                                e.slice_from(U"eux");
                                keep = true;
                            }
                        }
                        break;
                    }
                    case 3:
                        if (e.r2()) {
                            e.slice_del();
                            keep = true;
                        }
                        break;
                    case 4:
                        if (e.rv()) {
                            e.slice_from(U"i");
                            keep = true;
                        }
                        break;
                }
            }
            if (!keep) e.cursor = e.limit - v3;
            break;
        }
        case 7: {
            if (!e.r2()) return false;
            e.slice_del();
            size_t v5 = e.limit - e.cursor;
            e.ket = e.cursor;
            int sub = e.find_among_b(table_ite());
            bool keep = false;
            if (sub != 0) {
                e.bra = e.cursor;
                switch (sub) {
                    case 1: {
                        size_t v6 = e.limit - e.cursor;
                        if (e.r2()) {
                            e.slice_del();
                        } else {
                            e.cursor = e.limit - v6;
                            e.slice_from(U"abl");
                        }
                        keep = true;
                        break;
                    }
                    case 2: {
                        size_t v7 = e.limit - e.cursor;
                        if (e.r2()) {
                            e.slice_del();
                        } else {
                            e.cursor = e.limit - v7;
                            e.slice_from(U"iqU");
                        }
                        keep = true;
                        break;
                    }
                    case 3:
                        if (e.r2()) {
                            e.slice_del();
                            keep = true;
                        }
                        break;
                }
            }
            if (!keep) e.cursor = e.limit - v5;
            break;
        }
        case 8: {
            if (!e.r2()) return false;
            e.slice_del();
            size_t v8 = e.limit - e.cursor;
            bool keep = false;
            e.ket = e.cursor;
            if (e.eq_s_b(U"at")) {
                e.bra = e.cursor;
                if (e.r2()) {
                    e.slice_del();
                    e.ket = e.cursor;
                    if (e.eq_s_b(U"ic")) {
                        e.bra = e.cursor;
                        size_t v9 = e.limit - e.cursor;
                        if (e.r2()) {
                            e.slice_del();
                        } else {
                            e.cursor = e.limit - v9;
                            e.slice_from(U"iqU");
                        }
                        keep = true;
                    }
                }
            }
            if (!keep) e.cursor = e.limit - v8;
            break;
        }
        case 9:
            e.slice_from(U"eau");
            break;
        case 10:
            if (!e.r1()) return false;
            e.slice_from(U"al");
            break;
        case 11: {
            size_t v10 = e.limit - e.cursor;
            if (e.r2()) {
                e.slice_del();
            } else {
                e.cursor = e.limit - v10;
                if (!e.r1()) return false;
                e.slice_from(U"eux");
            }
            break;
        }
        case 12:
            if (!e.r1()) return false;
            if (!e.out_grouping_b(is_v)) return false;
            e.slice_del();
            break;
        case 13:
            if (!e.rv()) return false;
            e.slice_from(U"ant");
            return false;
        case 14:
            if (!e.rv()) return false;
            e.slice_from(U"ent");
            return false;
        case 15: {
            size_t v11 = e.limit - e.cursor;
            if (!e.in_grouping_b(is_v)) return false;
            if (!e.rv()) return false;
            e.cursor = e.limit - v11;
            e.slice_del();
            return false;
        }
    }
    return true;
}

bool i_verb_suffix(Env& e) {
    size_t v1 = e.limit - e.cursor;
    if (e.cursor < e.pV) return false;
    size_t saved_lb = e.limit_backward;
    e.limit_backward = e.pV;
    e.cursor = e.limit - v1;
    e.ket = e.cursor;
    int var = e.find_among_b(table_i_verb());
    if (var == 0) {
        e.limit_backward = saved_lb;
        return false;
    }
    e.bra = e.cursor;
    if (!e.out_grouping_b(is_v)) {
        e.limit_backward = saved_lb;
        return false;
    }
    e.slice_del();
    e.limit_backward = saved_lb;
    return true;
}

bool verb_suffix(Env& e) {
    size_t v1 = e.limit - e.cursor;
    if (e.cursor < e.pV) return false;
    size_t saved_lb = e.limit_backward;
    e.limit_backward = e.pV;
    e.cursor = e.limit - v1;
    e.ket = e.cursor;
    int var = e.find_among_b(table_verb());
    if (var == 0) {
        e.limit_backward = saved_lb;
        return false;
    }
    e.bra = e.cursor;
    switch (var) {
        case 1:
            if (!e.r2()) {
                e.limit_backward = saved_lb;
                return false;
            }
            e.slice_del();
            break;
        case 2:
            e.slice_del();
            break;
        case 3: {
            e.slice_del();
            size_t v3 = e.limit - e.cursor;
            e.ket = e.cursor;
            if (e.eq_s_b(U"e")) {
                e.bra = e.cursor;
                e.slice_del();
            } else {
                e.cursor = e.limit - v3;
            }
            break;
        }
    }
    e.limit_backward = saved_lb;
    return true;
}

bool residual_suffix(Env& e) {
    size_t v1 = e.limit - e.cursor;
    e.ket = e.cursor;
    if (e.eq_s_b(U"s")) {
        e.bra = e.cursor;
        size_t v2 = e.limit - e.cursor;
        if (e.out_grouping_b(is_keep_with_s)) {
            e.cursor = e.limit - v2;
            e.slice_del();
        } else {
            e.cursor = e.limit - v1;
        }
    } else {
        e.cursor = e.limit - v1;
    }

    size_t v3 = e.limit - e.cursor;
    if (e.cursor < e.pV) return false;
    size_t saved_lb = e.limit_backward;
    e.limit_backward = e.pV;
    e.cursor = e.limit - v3;
    e.ket = e.cursor;
    int var = e.find_among_b(table_residual());
    if (var == 0) {
        e.limit_backward = saved_lb;
        return false;
    }
    e.bra = e.cursor;
    switch (var) {
        case 1: {
            if (!e.r2()) {
                e.limit_backward = saved_lb;
                return false;
            }
            size_t v5 = e.limit - e.cursor;
            if (!e.eq_s_b(U"s")) {
                e.cursor = e.limit - v5;
                if (!e.eq_s_b(U"t")) {
                    e.limit_backward = saved_lb;
                    return false;
                }
            }
            e.slice_del();
            break;
        }
        case 2:
            e.slice_from(U"i");
            break;
        case 3:
            e.slice_del();
            break;
        case 4:
            if (!e.eq_s_b(U"gu")) {
                e.limit_backward = saved_lb;
                return false;
            }
            e.slice_del();
            break;
    }
    e.limit_backward = saved_lb;
    return true;
}

bool un_double(Env& e) {
    size_t v1 = e.limit - e.cursor;
    if (e.find_among_b(table_double()) == 0) return false;
    e.cursor = e.limit - v1;
    e.ket = e.cursor;
    if (e.cursor <= e.limit_backward) return false;
    --e.cursor;
    e.bra = e.cursor;
    e.slice_del();
    return true;
}

bool un_accent(Env& e) {
    int needed = 1;
    while (e.out_grouping_b(is_v)) --needed;
    if (needed > 0) return false;
    e.ket = e.cursor;
    size_t v3 = e.limit - e.cursor;
    if (!e.eq_s_b(U"é")) {
        e.cursor = e.limit - v3;
        if (!e.eq_s_b(U"è")) return false;
    }
    e.bra = e.cursor;
    e.slice_from(U"e");
    return true;
}

}  // namespace

std::u32string stem_french(std::u32string word) {
    Env e(std::move(word));
    size_t v1 = e.cursor;
    prelude(e);
    e.cursor = v1;
    mark_regions(e);
    e.cursor = 0;

    e.limit_backward = e.cursor;
    e.cursor = e.limit;

    size_t v3 = e.limit - e.cursor;
    do {
        size_t v4 = e.limit - e.cursor;
        bool done = false;
        do {
            size_t v5 = e.limit - e.cursor;
            bool any = false;
            size_t v6 = e.limit - e.cursor;
            if (standard_suffix(e)) {
                any = true;
            } else {
                e.cursor = e.limit - v6;
                if (i_verb_suffix(e)) {
                    any = true;
                } else {
                    e.cursor = e.limit - v6;
                    any = verb_suffix(e);
                }
            }
            if (!any) break;
            e.cursor = e.limit - v5;
            size_t v7 = e.limit - e.cursor;
            e.ket = e.cursor;
            size_t v8 = e.limit - e.cursor;
            if (e.eq_s_b(U"Y")) {
                e.bra = e.cursor;
                e.slice_from(U"i");
            } else {
                e.cursor = e.limit - v8;
                if (e.eq_s_b(U"ç")) {
                    e.bra = e.cursor;
                    e.slice_from(U"c");
                } else {
                    e.cursor = e.limit - v7;
                }
            }
            done = true;
        } while (false);
        if (!done) {
            e.cursor = e.limit - v4;
            if (!residual_suffix(e)) break;
        }
    } while (false);
    e.cursor = e.limit - v3;

    size_t v9 = e.limit - e.cursor;
    un_double(e);
    e.cursor = e.limit - v9;

    size_t v10 = e.limit - e.cursor;
    un_accent(e);
    e.cursor = e.limit - v10;

    e.cursor = e.limit_backward;
    postlude(e);
    return std::move(e.word);
}

std::string stem_french(std::string_view word) {
    return uni::encode_utf8(stem_french(uni::decode_utf8(word)));
}

}  // namespace abusedet
