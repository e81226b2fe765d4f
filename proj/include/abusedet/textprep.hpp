#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace abusedet {

enum class PrepMode { Basic, Advanced };

struct TokenizedText {
    std::vector<std::string> tokens;
    size_t source_len_chars = 0;
};

// short form (without apostrophe) -> long form
using ElisionTable = std::vector<std::pair<std::string, std::string>>;

const ElisionTable& default_elisions();

struct UrlConfig {
    std::vector<std::string> internal_hosts;
};

std::string collapse_repeats(std::string_view text);
std::string revert_elision(std::string_view text, const ElisionTable& table = default_elisions());
std::string deobfuscate_encodings(std::string_view text);
std::string tokenize_urls(std::string_view text, const UrlConfig& cfg = {});
std::vector<std::string> stem_tokens(const std::vector<std::string>& tokens);

TokenizedText basic_preprocess(std::string_view text);
TokenizedText advanced_preprocess(std::string_view text, const ElisionTable& elisions = default_elisions(),
                                  const UrlConfig& urls = {});
TokenizedText preprocess(std::string_view text, PrepMode mode, const ElisionTable& elisions = default_elisions(),
                         const UrlConfig& urls = {});

}  // namespace abusedet
