#pragma once

#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "abusedet/textprep.hpp"

namespace abusedet {

struct SentimentLexicon {
    std::map<std::string, double> weights;
};

struct BadWordList {
    std::set<std::string> entries;
};

struct BusinessPattern {
    std::string name;
    double weight = 1.0;
    std::string expression;
    std::regex compiled;
};

struct BusinessPatterns {
    std::vector<BusinessPattern> patterns;
};

// Loaders for the on-disk resource formats. `#` starts a comment line.
BadWordList load_badwords(const std::string& path);
SentimentLexicon load_sentiment(const std::string& path);
BusinessPatterns load_business_patterns(const std::string& path);
ElisionTable load_elisions(const std::string& path);
std::vector<std::string> load_hosts(const std::string& path);

// Same parsers over in-memory text (used for the built-in defaults).
BadWordList parse_badwords(const std::string& text, const std::string& origin);
SentimentLexicon parse_sentiment(const std::string& text, const std::string& origin);
BusinessPatterns parse_business_patterns(const std::string& text, const std::string& origin);
ElisionTable parse_elisions(const std::string& text, const std::string& origin);
std::vector<std::string> parse_hosts(const std::string& text, const std::string& origin);

const BadWordList& default_badwords();
const SentimentLexicon& default_sentiment();
const BusinessPatterns& default_business_patterns();
const std::vector<std::string>& default_hosts();

}  // namespace abusedet
