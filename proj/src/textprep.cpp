#include "abusedet/textprep.hpp"

#include <algorithm>

#include "abusedet/stemmer.hpp"
#include "abusedet/unicode.hpp"

namespace abusedet {

namespace {

constexpr char32_t kApos = U'\'';
constexpr char32_t kRightQuote = U'’';

bool strippable(char32_t c) { return uni::is_punct(c) || uni::is_symbol(c); }

bool is_marker(std::u32string_view tok) {
    return tok.size() >= 2 && tok[0] == U'_' && tok[1] == U'_';
}

bool all_digits(std::u32string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), uni::is_digit);
}

bool is_hex_digit(char32_t c) {
    return uni::is_digit(c) || (c >= U'a' && c <= U'f') || (c >= U'A' && c <= U'F');
}

int hex_value(char32_t c) {
    if (uni::is_digit(c)) return static_cast<int>(c - U'0');
    if (c >= U'a' && c <= U'f') return static_cast<int>(c - U'a' + 10);
    return static_cast<int>(c - U'A' + 10);
}

bool printable_ascii(unsigned b) { return b >= 0x20 && b <= 0x7E; }

// Decodes a whole token if it passes the binary gates (only 0/1, length a
// multiple of 8, at least 16 bits) or the hex gates (even length, at least 6
// digits), and every decoded byte is printable ASCII. Binary is tried first.
bool try_decode_token(std::u32string_view tok, std::u32string& out) {
    bool binary = tok.size() >= 16 && tok.size() % 8 == 0 &&
                  std::all_of(tok.begin(), tok.end(),
                              [](char32_t c) { return c == U'0' || c == U'1'; });
    if (binary) {
        std::u32string dec;
        for (size_t i = 0; i < tok.size(); i += 8) {
            unsigned b = 0;
            for (size_t j = 0; j < 8; ++j) b = (b << 1) | (tok[i + j] == U'1' ? 1u : 0u);
            if (!printable_ascii(b)) return false;
            dec.push_back(static_cast<char32_t>(b));
        }
        out = std::move(dec);
        return true;
    }
    bool hex = tok.size() >= 6 && tok.size() % 2 == 0 &&
               std::all_of(tok.begin(), tok.end(), is_hex_digit);
    if (hex) {
        std::u32string dec;
        for (size_t i = 0; i < tok.size(); i += 2) {
            unsigned b = static_cast<unsigned>(hex_value(tok[i]) * 16 + hex_value(tok[i + 1]));
            if (!printable_ascii(b)) return false;
            dec.push_back(static_cast<char32_t>(b));
        }
        out = std::move(dec);
        return true;
    }
    return false;
}

bool alnum(char32_t c) { return uni::is_letter(c) || uni::is_digit(c); }

void append_path_words(std::u32string_view part, std::vector<std::u32string>& words) {
    size_t i = 0;
    while (i < part.size()) {
        while (i < part.size() && !alnum(part[i])) ++i;
        size_t j = i;
        while (j < part.size() && alnum(part[j])) ++j;
        if (j > i) {
            std::u32string w(part.substr(i, j - i));
            if (!all_digits(w) && w != U"www") words.push_back(std::move(w));
        }
        i = j;
    }
}

const std::vector<std::u32string>& known_extensions() {
    static const std::vector<std::u32string> exts = {U"html", U"htm", U"php",
                                                     U"asp", U"aspx", U"jsp"};
    return exts;
}

// Replaces one URL span with marker + extracted words.
std::u32string expand_url(std::u32string_view url, const UrlConfig& cfg) {
    std::u32string_view rest = url;
    if (rest.substr(0, 8) == U"https://") rest.remove_prefix(8);
    else if (rest.substr(0, 7) == U"http://") rest.remove_prefix(7);

    size_t host_end = rest.find_first_of(U"/?#");
    std::u32string_view host = rest.substr(0, host_end);
    std::u32string_view tail = host_end == std::u32string_view::npos
                                   ? std::u32string_view{}
                                   : rest.substr(host_end);
    if (auto at = host.rfind(U'@'); at != std::u32string_view::npos) host.remove_prefix(at + 1);
    if (auto colon = host.find(U':'); colon != std::u32string_view::npos) host = host.substr(0, colon);

    std::string host_utf8 = uni::encode_utf8(uni::to_lower(host));
    bool internal = std::find(cfg.internal_hosts.begin(), cfg.internal_hosts.end(),
                              host_utf8) != cfg.internal_hosts.end();

    std::vector<std::u32string> words;
    if (!internal) {
        // Keep only the registrable part of the host (last two labels).
        std::vector<std::u32string> labels;
        size_t i = 0;
        while (i <= host.size()) {
            size_t dot = host.find(U'.', i);
            if (dot == std::u32string_view::npos) dot = host.size();
            if (dot > i) labels.emplace_back(host.substr(i, dot - i));
            i = dot + 1;
        }
        size_t first = labels.size() > 2 ? labels.size() - 2 : 0;
        for (size_t k = first; k < labels.size(); ++k) {
            if (!all_digits(labels[k]) && labels[k] != U"www") words.push_back(labels[k]);
        }
    }

    std::u32string_view path = tail;
    if (auto cut = path.find_first_of(U"?#"); cut != std::u32string_view::npos)
        path = path.substr(0, cut);
    std::u32string path_owned(path);
    size_t slash = path_owned.rfind(U'/');
    size_t seg_start = slash == std::u32string::npos ? 0 : slash + 1;
    size_t dot = path_owned.rfind(U'.');
    if (dot != std::u32string::npos && dot >= seg_start) {
        std::u32string ext = path_owned.substr(dot + 1);
        std::u32string ext_lower = uni::to_lower(ext);
        for (const auto& known : known_extensions()) {
            if (ext_lower == known) {
                path_owned.erase(dot);
                break;
            }
        }
    }
    append_path_words(path_owned, words);

    std::u32string out = internal ? U"__url_internal" : U"__url_external";
    for (const auto& w : words) {
        out.push_back(U' ');
        out += w;
    }
    return out;
}

bool url_starts_at(const std::u32string& s, size_t i, size_t& span_len) {
    auto begins_with = [&](std::u32string_view p) {
        return s.compare(i, p.size(), p) == 0;
    };
    bool hit = begins_with(U"http://") || begins_with(U"https://");
    if (!hit && begins_with(U"www.")) {
        hit = i == 0 || uni::is_space(s[i - 1]);
    }
    if (!hit) return false;
    size_t j = i;
    while (j < s.size() && !uni::is_space(s[j])) ++j;
    // Trailing sentence punctuation is not part of the URL.
    while (j > i && (uni::is_punct(s[j - 1]) || uni::is_symbol(s[j - 1])) && s[j - 1] != U'/')
        --j;
    span_len = j - i;
    return span_len > 0;
}

}  // namespace

const ElisionTable& default_elisions() {
    static const ElisionTable table = {
        {"qu", "que"}, {"j", "je"}, {"t", "te"}, {"l", "le"},
        {"d", "de"},   {"s", "se"}, {"m", "me"}, {"n", "ne"},
        {"c", "ce"},
    };
    return table;
}

std::string collapse_repeats(std::string_view text) {
    std::u32string s = uni::decode_utf8(text);
    std::u32string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        size_t run = j - i;
        out.append(std::min<size_t>(run, 2), s[i]);
        i = j;
    }
    return uni::encode_utf8(out);
}

std::string revert_elision(std::string_view text, const ElisionTable& table) {
    std::u32string s = uni::decode_utf8(text);
    std::vector<std::pair<std::u32string, std::u32string>> forms;
    forms.reserve(table.size());
    for (const auto& [shortf, longf] : table)
        forms.emplace_back(uni::decode_utf8(shortf), uni::decode_utf8(longf));
    std::stable_sort(forms.begin(), forms.end(), [](const auto& a, const auto& b) {
        return a.first.size() > b.first.size();
    });

    std::u32string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        bool replaced = false;
        for (const auto& [shortf, longf] : forms) {
            size_t n = shortf.size();
            if (i + n + 1 < s.size() && s.compare(i, n, shortf) == 0 &&
                (s[i + n] == kApos || s[i + n] == kRightQuote) &&
                uni::is_letter(s[i + n + 1])) {
                out += longf;
                out.push_back(U' ');
                i += n + 1;
                replaced = true;
                break;
            }
        }
        if (!replaced) {
            out.push_back(s[i]);
            ++i;
        }
    }
    return uni::encode_utf8(out);
}

std::string deobfuscate_encodings(std::string_view text) {
    std::u32string s = uni::decode_utf8(text);
    std::u32string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (uni::is_space(s[i])) {
            out.push_back(s[i]);
            ++i;
            continue;
        }
        size_t j = i;
        while (j < s.size() && !uni::is_space(s[j])) ++j;
        std::u32string_view tok(s.data() + i, j - i);
        std::u32string decoded;
        if (try_decode_token(tok, decoded)) {
            out += decoded;
        } else {
            out.append(tok);
        }
        i = j;
    }
    return uni::encode_utf8(out);
}

std::string tokenize_urls(std::string_view text, const UrlConfig& cfg) {
    std::u32string s = uni::decode_utf8(text);
    std::u32string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        size_t span = 0;
        if (url_starts_at(s, i, span)) {
            out += expand_url(std::u32string_view(s.data() + i, span), cfg);
            i += span;
        } else {
            out.push_back(s[i]);
            ++i;
        }
    }
    return uni::encode_utf8(out);
}

std::vector<std::string> stem_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (t.size() >= 2 && t[0] == '_' && t[1] == '_') {
            out.push_back(t);
        } else {
            out.push_back(stem_french(t));
        }
    }
    return out;
}

TokenizedText basic_preprocess(std::string_view text) {
    std::u32string s = uni::to_lower(uni::decode_utf8(text));
    TokenizedText out;
    out.source_len_chars = s.size();
    size_t i = 0;
    while (i < s.size()) {
        if (uni::is_space(s[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < s.size() && !uni::is_space(s[j])) ++j;
        std::u32string_view tok(s.data() + i, j - i);
        if (!is_marker(tok)) {
            while (!tok.empty() && strippable(tok.front())) tok.remove_prefix(1);
            while (!tok.empty() && strippable(tok.back())) tok.remove_suffix(1);
        }
        if (!tok.empty()) out.tokens.push_back(uni::encode_utf8(tok));
        i = j;
    }
    return out;
}

TokenizedText advanced_preprocess(std::string_view text, const ElisionTable& elisions,
                                  const UrlConfig& urls) {
    std::u32string raw = uni::decode_utf8(text);
    std::string s = uni::encode_utf8(uni::to_lower(raw));
    s = revert_elision(s, elisions);
    s = deobfuscate_encodings(s);
    s = tokenize_urls(s, urls);
    TokenizedText out = basic_preprocess(s);
    out.tokens = stem_tokens(out.tokens);
    out.source_len_chars = raw.size();
    return out;
}

TokenizedText preprocess(std::string_view text, PrepMode mode, const ElisionTable& elisions,
                         const UrlConfig& urls) {
    if (mode == PrepMode::Basic) return basic_preprocess(text);
    return advanced_preprocess(text, elisions, urls);
}

}  // namespace abusedet
