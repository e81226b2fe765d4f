#include "abusedet/resources.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "abusedet/unicode.hpp"

namespace abusedet {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open resource file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Yields trimmed, non-empty, non-comment lines with their 1-based numbers.
std::vector<std::pair<size_t, std::string>> content_lines(const std::string& text) {
    std::vector<std::pair<size_t, std::string>> out;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        out.emplace_back(lineno, t);
    }
    return out;
}

std::vector<std::string> split_tabs(const std::string& s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find('\t', start);
        if (pos == std::string::npos) {
            parts.push_back(trim(s.substr(start)));
            break;
        }
        parts.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void fail(const std::string& origin, size_t lineno, const std::string& what) {
    throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + what);
}

double parse_weight(const std::string& origin, size_t lineno, const std::string& s) {
    try {
        size_t used = 0;
        double w = std::stod(s, &used);
        if (used != s.size()) fail(origin, lineno, "invalid weight '" + s + "'");
        return w;
    } catch (const std::invalid_argument&) {
        fail(origin, lineno, "invalid weight '" + s + "'");
    } catch (const std::out_of_range&) {
        fail(origin, lineno, "weight out of range '" + s + "'");
    }
}

}  // namespace

BadWordList parse_badwords(const std::string& text, const std::string&) {
    BadWordList list;
    for (const auto& [lineno, line] : content_lines(text)) {
        (void)lineno;
        list.entries.insert(uni::lower_utf8(line));
    }
    return list;
}

SentimentLexicon parse_sentiment(const std::string& text, const std::string& origin) {
    SentimentLexicon lex;
    for (const auto& [lineno, line] : content_lines(text)) {
        auto parts = split_tabs(line);
        if (parts.size() != 2 || parts[0].empty())
            fail(origin, lineno, "expected word<TAB>weight");
        lex.weights[uni::lower_utf8(parts[0])] = parse_weight(origin, lineno, parts[1]);
    }
    return lex;
}

BusinessPatterns parse_business_patterns(const std::string& text, const std::string& origin) {
    BusinessPatterns pats;
    for (const auto& [lineno, line] : content_lines(text)) {
        auto parts = split_tabs(line);
        if (parts.size() != 3 || parts[0].empty() || parts[2].empty())
            fail(origin, lineno, "expected name<TAB>weight<TAB>regex");
        BusinessPattern p;
        p.name = parts[0];
        p.weight = parse_weight(origin, lineno, parts[1]);
        p.expression = parts[2];
        try {
            p.compiled = std::regex(p.expression, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
            fail(origin, lineno, "invalid regex for pattern '" + p.name + "': " + e.what());
        }
        pats.patterns.push_back(std::move(p));
    }
    return pats;
}

ElisionTable parse_elisions(const std::string& text, const std::string& origin) {
    ElisionTable table;
    for (const auto& [lineno, line] : content_lines(text)) {
        auto parts = split_tabs(line);
        if (parts.size() != 2 || parts[0].empty() || parts[1].empty())
            fail(origin, lineno, "expected short<TAB>long");
        std::string short_form = uni::lower_utf8(parts[0]);
        // A trailing apostrophe on the short form is accepted and dropped.
        if (short_form.size() >= 3 && short_form.compare(short_form.size() - 3, 3, "\xe2\x80\x99") == 0)
            short_form.resize(short_form.size() - 3);
        else if (!short_form.empty() && short_form.back() == '\'')
            short_form.pop_back();
        if (short_form.empty()) fail(origin, lineno, "empty short form");
        table.emplace_back(short_form, uni::lower_utf8(parts[1]));
    }
    return table;
}

std::vector<std::string> parse_hosts(const std::string& text, const std::string&) {
    std::vector<std::string> hosts;
    for (const auto& [lineno, line] : content_lines(text)) {
        (void)lineno;
        hosts.push_back(uni::lower_utf8(line));
    }
    return hosts;
}

BadWordList load_badwords(const std::string& path) {
    return parse_badwords(read_file(path), path);
}

SentimentLexicon load_sentiment(const std::string& path) {
    return parse_sentiment(read_file(path), path);
}

BusinessPatterns load_business_patterns(const std::string& path) {
    return parse_business_patterns(read_file(path), path);
}

ElisionTable load_elisions(const std::string& path) {
    return parse_elisions(read_file(path), path);
}

std::vector<std::string> load_hosts(const std::string& path) {
    return parse_hosts(read_file(path), path);
}

namespace {

const char* kDefaultBadWords = R"(# default french insult list
connard
connasse
con
conne
pute
putain
salope
salaud
enculé
encule
merde
merdeux
bâtard
batard
bouffon
abruti
crétin
cretin
débile
debile
idiot
idiote
imbécile
imbecile
stupide
minable
pourri
pourriture
ordure
raclure
racaille
vermine
cafard
déchet
dechet
fumier
charogne
gueule
clochard
mongol
attardé
attarde
taré
tare
naze
nul
nullard
moche
grognasse
pétasse
petasse
pouffiasse
garce
trainée
trainee
crève
creve
suicide
noob
looser
loser
victime
bolosse
boloss
)";

const char* kDefaultSentiment = R"(# default french sentiment lexicon: word<TAB>weight
bon	1
bonne	1
bien	1
super	2
génial	2
genial	2
excellent	2
parfait	2
bravo	2
merci	1
sympa	1
cool	1
gg	1
félicitations	2
felicitations	2
agréable	1
agreable	1
utile	1
content	1
contente	1
heureux	1
heureuse	1
victoire	1
belle	1
beau	1
aide	1
aimable	1
magnifique	2
formidable	2
respect	1
propre	1
juste	1
fort	1
bienvenue	1
amical	1
mauvais	-1
mauvaise	-1
horrible	-2
affreux	-2
honte	-1
honteux	-2
triste	-1
déteste	-2
deteste	-2
hais	-2
haine	-2
mourir	-2
mort	-1
tuer	-2
tue	-2
frapper	-1
menace	-2
dégage	-2
degage	-2
ferme	-1
sale	-1
dégoûtant	-2
degoutant	-2
pathétique	-2
pathetique	-2
lamentable	-2
ridicule	-1
faible	-1
peur	-1
pleurer	-1
rage	-1
jamais	-1
)";

// Patterns are matched against raw lowercased text, so they must not rely on
// word boundaries next to accented characters.
const char* kDefaultBusiness = R"(# default in-game business patterns: name<TAB>weight<TAB>regex
coords	1	\[[0-9]{1,3}:[0-9]{1,3}:[0-9]{1,3}\]
report_link	1	https?://[a-z0-9.:-]+/report/[a-z0-9]+
fleet_terms	1	\b(flotte|vaisseau|vaisseaux|croiseur|croiseurs|chasseur|chasseurs|bombardier|bombardiers|recycleur|recycleurs|sonde|sondes|transporteur|transporteurs)\b
economy_terms	1	\b(mine|mines|usine|usines|chantier|laboratoire|hangar|silo|centrale|ressources|metal|cristal|deut|deutérium|deuterium)\b
combat_terms	1	\b(attaque|attaques|raid|raids|pillage|bouclier|boucliers|défense|defense|défenses|defenses|escadron|galaxie|secteur|colonie|colonies|alliance)\b
)";

const char* kDefaultHosts = R"(play.spaceorigin.fr
spaceorigin.fr
)";

}  // namespace

const BadWordList& default_badwords() {
    static const BadWordList list = parse_badwords(kDefaultBadWords, "<builtin badwords>");
    return list;
}

const SentimentLexicon& default_sentiment() {
    static const SentimentLexicon lex = parse_sentiment(kDefaultSentiment, "<builtin sentiment>");
    return lex;
}

const BusinessPatterns& default_business_patterns() {
    static const BusinessPatterns pats =
        parse_business_patterns(kDefaultBusiness, "<builtin business>");
    return pats;
}

const std::vector<std::string>& default_hosts() {
    static const std::vector<std::string> hosts = parse_hosts(kDefaultHosts, "<builtin hosts>");
    return hosts;
}

}  // namespace abusedet
