#include "abusedet/unicode.hpp"

namespace abusedet::uni {

namespace {
constexpr char32_t kReplacement = 0xFFFD;
}

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        unsigned char b0 = static_cast<unsigned char>(s[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int len;
        char32_t cp;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + len > s.size()) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        bool ok = true;
        for (int k = 1; k < len; ++k) {
            unsigned char b = static_cast<unsigned char>(s[i + k]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (!ok) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        // Reject overlong forms and surrogates.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
            (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
            (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(char32_t c) {
    std::string out;
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
    return out;
}

std::string encode_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) out += encode_utf8(c);
    return out;
}

bool is_letter(char32_t c) {
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
    if (c >= 0xC0 && c <= 0xFF) return c != 0xD7 && c != 0xF7;
    if (c >= 0x100 && c <= 0x17F) return true;
    return c == 0xAA || c == 0xB5 || c == 0xBA;
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_space(char32_t c) {
    if (c == U' ' || (c >= 0x09 && c <= 0x0D)) return true;
    if (c == 0xA0) return true;
    if (c >= 0x2000 && c <= 0x200A) return true;
    return c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F;
}

bool is_punct(char32_t c) {
    if (c < 0x80) {
        switch (c) {
            case U'!': case U'"': case U'#': case U'%': case U'&':
            case U'\'': case U'(': case U')': case U'*': case U',':
            case U'-': case U'.': case U'/': case U':': case U';':
            case U'?': case U'@': case U'[': case U'\\': case U']':
            case U'_': case U'{': case U'}':
                return true;
            default:
                return false;
        }
    }
    switch (c) {
        case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7:
        case 0xBB: case 0xBF:
            return true;
        default:
            break;
    }
    if (c >= 0x2010 && c <= 0x2027) return true;
    return c >= 0x2030 && c <= 0x205E && c != 0x2044 && c != 0x2052;
}

bool is_symbol(char32_t c) {
    if (c < 0x80) {
        switch (c) {
            case U'$': case U'+': case U'<': case U'=': case U'>':
            case U'^': case U'`': case U'|': case U'~':
                return true;
            default:
                return false;
        }
    }
    switch (c) {
        case 0xA2: case 0xA3: case 0xA4: case 0xA5: case 0xA6: case 0xA8:
        case 0xA9: case 0xAC: case 0xAE: case 0xAF: case 0xB0: case 0xB1:
        case 0xB4: case 0xB8: case 0xD7: case 0xF7:
        case 0x2044: case 0x2052:
            return true;
        default:
            return false;
    }
}

bool is_upper(char32_t c) {
    if (c >= U'A' && c <= U'Z') return true;
    if ((c >= 0xC0 && c <= 0xD6) || (c >= 0xD8 && c <= 0xDE)) return true;
    if (c >= 0x100 && c <= 0x137) return (c & 1) == 0;
    if (c >= 0x139 && c <= 0x148) return (c & 1) == 1;
    if (c >= 0x14A && c <= 0x177) return (c & 1) == 0;
    if (c == 0x178) return true;
    if (c >= 0x179 && c <= 0x17D) return (c & 1) == 1;
    return false;
}

char32_t to_lower(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 0x20;
    if ((c >= 0xC0 && c <= 0xD6) || (c >= 0xD8 && c <= 0xDE)) return c + 0x20;
    if (c == 0x130) return U'i';
    if (c >= 0x100 && c <= 0x137) return (c & 1) == 0 ? c + 1 : c;
    if (c >= 0x139 && c <= 0x148) return (c & 1) == 1 ? c + 1 : c;
    if (c >= 0x14A && c <= 0x177) return (c & 1) == 0 ? c + 1 : c;
    if (c == 0x178) return 0xFF;
    if (c >= 0x179 && c <= 0x17D) return (c & 1) == 1 ? c + 1 : c;
    return c;
}

std::u32string to_lower(std::u32string_view s) {
    std::u32string out(s);
    for (auto& c : out) c = to_lower(c);
    return out;
}

std::string lower_utf8(std::string_view s) {
    return encode_utf8(to_lower(decode_utf8(s)));
}

}  // namespace abusedet::uni
