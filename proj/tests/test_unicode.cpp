#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abusedet/unicode.hpp"

using namespace abusedet;

TEST_CASE("utf8 round trip") {
    std::string s = "héllo wörld œuf ça va 😀";
    CHECK(uni::encode_utf8(uni::decode_utf8(s)) == s);
}

TEST_CASE("malformed utf8 becomes replacement char") {
    std::string bad = "ab\xC3";
    auto u = uni::decode_utf8(bad);
    REQUIRE(u.size() == 3);
    CHECK(u[2] == char32_t(0xFFFD));

    std::string cont = "\x80xy";
    u = uni::decode_utf8(cont);
    REQUIRE(u.size() == 3);
    CHECK(u[0] == char32_t(0xFFFD));
}

TEST_CASE("overlong and surrogate sequences rejected") {
    std::string overlong = "\xC0\xAF";
    auto u = uni::decode_utf8(overlong);
    CHECK(u.find(U'/') == std::u32string::npos);

    std::string surrogate = "\xED\xA0\x80";
    u = uni::decode_utf8(surrogate);
    CHECK(u[0] == char32_t(0xFFFD));
}

TEST_CASE("character classes") {
    CHECK(uni::is_letter(U'a'));
    CHECK(uni::is_letter(U'Z'));
    CHECK(uni::is_letter(U'é'));
    CHECK(uni::is_letter(U'ç'));
    CHECK(uni::is_letter(U'Œ'));
    CHECK_FALSE(uni::is_letter(U'×'));
    CHECK_FALSE(uni::is_letter(U'÷'));
    CHECK_FALSE(uni::is_letter(U'3'));

    CHECK(uni::is_digit(U'0'));
    CHECK(uni::is_digit(U'9'));
    CHECK_FALSE(uni::is_digit(U'²'));

    CHECK(uni::is_space(U' '));
    CHECK(uni::is_space(U'\t'));
    CHECK(uni::is_space(char32_t(0x00A0)));
    CHECK(uni::is_space(char32_t(0x2009)));

    CHECK(uni::is_punct(U'!'));
    CHECK(uni::is_punct(U'@'));
    CHECK(uni::is_punct(U'«'));
    CHECK(uni::is_punct(char32_t(0x2014)));
    CHECK_FALSE(uni::is_punct(U'a'));
    CHECK_FALSE(uni::is_punct(U'='));
    CHECK(uni::is_symbol(U'='));
    CHECK(uni::is_symbol(U'$'));
    CHECK(uni::is_symbol(U'×'));
    CHECK_FALSE(uni::is_symbol(U'!'));

    CHECK_FALSE(uni::is_letter(char32_t(0x1F600)));
    CHECK_FALSE(uni::is_punct(char32_t(0x1F600)));
    CHECK_FALSE(uni::is_symbol(char32_t(0x1F600)));
}

TEST_CASE("case handling") {
    CHECK(uni::is_upper(U'A'));
    CHECK(uni::is_upper(U'É'));
    CHECK_FALSE(uni::is_upper(U'é'));
    CHECK_FALSE(uni::is_upper(U'ß'));

    CHECK(uni::to_lower(U'A') == U'a');
    CHECK(uni::to_lower(U'É') == U'é');
    CHECK(uni::to_lower(U'Ç') == U'ç');
    CHECK(uni::to_lower(char32_t(0x178)) == char32_t(0xFF));
    CHECK(uni::to_lower(U'Œ') == U'œ');
    CHECK(uni::to_lower(U'a') == U'a');
    CHECK(uni::to_lower(U'!') == U'!');

    CHECK(uni::lower_utf8("SALE Gamin, T'ES NUL") == "sale gamin, t'es nul");
    CHECK(uni::lower_utf8("ÉNERVÉ") == "énervé");
}
