#pragma once

#include <string>
#include <string_view>

namespace abusedet {

// Snowball French stemming algorithm (2002 revision).
// Input is expected to be lowercase UTF-8; output is the UTF-8 stem.
std::string stem_french(std::string_view word);
std::u32string stem_french(std::u32string word);

}  // namespace abusedet
