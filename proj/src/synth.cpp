#include "abusedet/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace abusedet {
namespace {

const char* kBenignTemplates[] = {
    "attaque prévue sur {c} ce soir, préparez vos flottes",
    "j'ai besoin de {n} croiseurs pour le raid de demain",
    "rapport de combat: {n} vaisseaux perdus, {n} recyclés",
    "quelqu'un peut me prêter {n} de metal ?",
    "bien joué pour la défense hier soir",
    "la colonie en {c} est à vendre contre {n} cristal",
    "signalement envoyé https://play.spaceorigin.fr/report/{h}",
    "gg pour le classement, belle alliance",
    "le chantier spatial est au niveau {n}",
    "transfert de ressources prévu vers {c}",
    "qui est dispo pour escorter mes transporteurs ?",
    "match nul contre la flotte adverse, on recommence demain",
    "mes sondes ont repéré une cible en {c}",
    "pensez à vider le hangar avant l'attaque",
    "la centrale solaire passe niveau {n} cette nuit",
    "il reste {n} deut dans le silo, servez-vous",
    "je lance {n} bombardiers sur {c}, escorte bienvenue",
    "super raid hier, merci pour le bouclier",
    "le laboratoire sera prêt dans {n} heures",
    "mes recycleurs arrivent en {c} dans {n} minutes",
    "gg pour le raid hier",
    "merde j'ai perdu toute ma flotte dans le crash",
    "je suis naze ce soir, on verra demain",
    "c'est debile ce bug de recyclage",
};

const char* kReactionTemplates[] = {
    "calme toi s'il te plaît",
    "je signale ce message au modérateur",
    "ce langage n'est pas toléré ici",
    "signalé, le modérateur va regarder https://play.spaceorigin.fr/report/{h}",
    "pas de ça sur ce canal merci",
    "arrête tout de suite ou je préviens l'équipe",
    "capture faite, rapport envoyé au modérateur",
    "on reste poli ici, dernier avertissement",
};

const char* kAbuseTemplates[] = {
    "t'es qu'un {b}",
    "espèce de {b}",
    "sale {b} va",
    "{b} de {b}",
    "je te déteste {b}",
    "va crever {b}",
    "ferme la grosse {b}",
    "t'es vraiment une {b} dégage",
    "qu'est-ce que tu racontes {b}",
    "retourne chez ta mère petit {b}",
    "gg pour le classement {b}, belle alliance de {b}",
    "bien joué pour la défense hier soir {b}",
    "super le rapport de combat {b}",
    "ce raid de merde",
    "cette alliance est naze",
    "la défense est debile",
};

// ASCII-only lines survive a hex/binary round trip through the printable gate.
const char* kAsciiAbuse[] = {
    "va crever sale con",
    "t es qu un idiot fini",
    "ferme la pauvre naze",
    "tu n es qu une merde",
    "go die",
    "degage d ici pauvre type",
    "personne ne te supporte minable",
};

const char* kAsciiBenign[] = {
    "bien joue a tous",
    "gg pour le raid hier",
    "rendez vous ce soir",
    "merci pour le bouclier",
    "le chantier est pret",
    "bon match",
    "on se retrouve demain soir",
};

const char* kBadWords[] = {
    "connard", "pute",    "salope",  "merde",      "abruti",  "cretin",
    "debile",  "imbecile", "ordure",  "racaille",   "batard",  "minable",
    "pourriture", "petasse", "bouffon", "naze",
};

struct Generator {
    const SynthConfig& cfg;
    std::mt19937_64 rng;
    int64_t clock = 1600000000;
    size_t next_id = 0;
    Corpus corpus;

    std::vector<std::string> channels;
    std::vector<MessageKind> channel_kinds;
    std::vector<size_t> im_channels;
    std::vector<size_t> cm_channels;
    std::vector<std::string> users;
    std::vector<size_t> clean_users;
    std::vector<size_t> rich_users;
    std::vector<size_t> abusers;

    explicit Generator(const SynthConfig& c) : cfg(c), rng(c.seed) {}

    size_t pick(size_t n) { return static_cast<size_t>(rng() % n); }

    double unit() { return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0); }

    template <typename T>
    void shuffle_vec(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[pick(i)]);
    }

    std::string fresh_id() {
        char buf[16];
        std::snprintf(buf, sizeof buf, "m%06zu", next_id++);
        return buf;
    }

    std::string number_token() { return std::to_string(1 + pick(500)); }

    std::string coord_token() {
        return "[" + std::to_string(1 + pick(9)) + ":" + std::to_string(1 + pick(499)) + ":" +
               std::to_string(1 + pick(15)) + "]";
    }

    std::string hex_token(size_t n) {
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (size_t i = 0; i < n; ++i) out.push_back(digits[pick(16)]);
        return out;
    }

    std::string fill_template(const char* tpl) {
        std::string out;
        for (const char* p = tpl; *p;) {
            if (p[0] == '{' && p[1] && p[2] == '}') {
                switch (p[1]) {
                    case 'n': out += number_token(); break;
                    case 'c': out += coord_token(); break;
                    case 'h': out += hex_token(6); break;
                    case 'b': out += kBadWords[pick(std::size(kBadWords))]; break;
                    default: out.append(p, 3); break;
                }
                p += 3;
            } else {
                out.push_back(*p++);
            }
        }
        return out;
    }

    std::string benign_text() { return fill_template(kBenignTemplates[pick(std::size(kBenignTemplates))]); }

    std::string reaction_text() {
        return fill_template(kReactionTemplates[pick(std::size(kReactionTemplates))]);
    }

    static std::string hex_encode(const std::string& s) {
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (unsigned char c : s) {
            out.push_back(digits[c >> 4]);
            out.push_back(digits[c & 0xf]);
        }
        return out;
    }

    static std::string binary_encode(const std::string& s) {
        std::string out;
        for (unsigned char c : s)
            for (int bit = 7; bit >= 0; --bit) out.push_back((c >> bit) & 1 ? '1' : '0');
        return out;
    }

    // Same disguise mix for both classes; hex/binary swap in an ASCII payload
    // from the matching pool so encoded blobs alone carry no label signal. The
    // numeric suffix keeps every encoded string distinct.
    std::string ascii_payload(const char* const* pool, size_t pool_size) {
        return std::string(pool[pick(pool_size)]) + " " + std::to_string(1 + pick(500));
    }

    std::string disguise(std::string plain, const char* const* ascii_pool, size_t pool_size) {
        double r = unit();
        if (r < 0.35) return hex_encode(ascii_payload(ascii_pool, pool_size));
        if (r < 0.45) return binary_encode(ascii_payload(ascii_pool, pool_size));
        if (r < 0.65) {
            for (char& c : plain) {
                if (c == 'a') c = '@';
                else if (c == 'e') c = '3';
            }
            return plain;
        }
        if (r < 0.80) {
            std::vector<size_t> vowels;
            for (size_t i = 0; i < plain.size(); ++i)
                if (std::string("aeiou").find(plain[i]) != std::string::npos) vowels.push_back(i);
            if (!vowels.empty()) {
                size_t at = vowels[pick(vowels.size())];
                plain.insert(at, std::string(3 + pick(4), plain[at]));
            }
            return plain;
        }
        if (r < 0.90) {
            for (char& c : plain)
                if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
            return plain;
        }
        std::string repeated = plain;
        size_t copies = 2 + pick(2);
        for (size_t i = 0; i < copies; ++i) repeated += " " + plain;
        return repeated;
    }

    struct LabeledLine {
        std::string text;
        bool disguised;
    };

    LabeledLine abuse_text() {
        std::string plain = fill_template(kAbuseTemplates[pick(std::size(kAbuseTemplates))]);
        if (unit() >= cfg.obfuscation_rate) return {std::move(plain), false};
        return {disguise(std::move(plain), kAsciiAbuse, std::size(kAsciiAbuse)), true};
    }

    LabeledLine benign_labeled_text() {
        std::string plain = benign_text();
        if (unit() >= cfg.obfuscation_rate * 0.5) return {std::move(plain), false};
        return {disguise(std::move(plain), kAsciiBenign, std::size(kAsciiBenign)), true};
    }

    size_t home_channel(size_t user) {
        size_t which = pick(2);
        return which == 0 ? user % channels.size() : (user * 7 + 3) % channels.size();
    }

    void emit(size_t user, size_t channel, std::string text, std::optional<Label> label,
              int64_t min_step, int64_t step_range) {
        clock += min_step + static_cast<int64_t>(pick(static_cast<size_t>(step_range)));
        Message m;
        m.id = fresh_id();
        m.kind = channel_kinds[channel];
        m.author = users[user];
        m.channel = channels[channel];
        m.ts = clock;
        m.text = std::move(text);
        m.label = label;
        corpus.messages.push_back(std::move(m));
    }

    void setup_population() {
        size_t n_im = std::max<size_t>(1, static_cast<size_t>(0.16 * static_cast<double>(cfg.n_channels) + 0.5));
        if (n_im >= cfg.n_channels) n_im = cfg.n_channels - 1;
        char buf[32];
        for (size_t i = 0; i < cfg.n_channels; ++i) {
            bool im = i < n_im;
            std::snprintf(buf, sizeof buf, im ? "th%02zu" : "room%02zu", i);
            channels.emplace_back(buf);
            channel_kinds.push_back(im ? MessageKind::InGame : MessageKind::Chat);
            (im ? im_channels : cm_channels).push_back(i);
        }
        for (size_t i = 0; i < cfg.n_users; ++i) {
            std::snprintf(buf, sizeof buf, "u%03zu", i);
            users.emplace_back(buf);
        }
        size_t n_abusers = std::max<size_t>(1, cfg.n_users / 5);
        for (size_t i = 0; i < cfg.n_users - n_abusers; ++i) clean_users.push_back(i);
        for (size_t i = cfg.n_users - n_abusers; i < cfg.n_users; ++i) abusers.push_back(i);
        size_t n_rich = static_cast<size_t>(
            std::min<double>(static_cast<double>(clean_users.size()),
                             cfg.rich_history_fraction * static_cast<double>(clean_users.size()) + 0.999));
        for (size_t i = 0; i < n_rich; ++i) rich_users.push_back(clean_users[i]);
    }

    void warmup_phase() {
        std::vector<size_t> schedule;
        for (size_t u : rich_users) {
            size_t count = 55 + pick(15);
            schedule.insert(schedule.end(), count, u);
        }
        for (size_t u : clean_users)
            if (std::find(rich_users.begin(), rich_users.end(), u) == rich_users.end())
                schedule.insert(schedule.end(), 3 + pick(4), u);
        for (size_t u : abusers) schedule.insert(schedule.end(), 2 + pick(4), u);
        shuffle_vec(schedule);
        for (size_t u : schedule) emit(u, home_channel(u), benign_text(), std::nullopt, 2, 45);
    }

    size_t abuse_channel() {
        if (!im_channels.empty() && unit() < 0.14) return im_channels[pick(im_channels.size())];
        return cm_channels[pick(cm_channels.size())];
    }

    std::vector<size_t> pick_distinct_rich(size_t count) {
        std::vector<size_t> pool = rich_users;
        shuffle_vec(pool);
        if (count > pool.size()) count = pool.size();
        pool.resize(count);
        return pool;
    }

    void labeled_phase() {
        std::vector<char> events(cfg.n_abuse, 'A');
        events.insert(events.end(), cfg.n_nonabuse, 'N');
        shuffle_vec(events);
        size_t since_background = 0;
        for (char ev : events) {
            if (ev == 'N') {
                size_t user = clean_users[pick(clean_users.size())];
                size_t channel = home_channel(user);
                emit(user, channel, benign_labeled_text().text, Label::NonAbuse, 2, 45);
                if (unit() < 0.55) {
                    for (size_t u : pick_distinct_rich(1 + pick(3)))
                        emit(u, channel, benign_text(), std::nullopt, 1, 12);
                }
            } else {
                size_t user = abusers[pick(abusers.size())];
                size_t channel = abuse_channel();
                LabeledLine line = abuse_text();
                bool disguised = line.disguised;
                emit(user, channel, std::move(line.text), Label::Abuse, 2, 45);
                if (unit() < (disguised ? 0.35 : 0.7)) {
                    for (size_t u : pick_distinct_rich(2 + pick(4)))
                        emit(u, channel, reaction_text(), std::nullopt, 1, 8);
                }
            }
            if (++since_background >= 6) {
                since_background = 0;
                size_t extra = 1 + pick(3);
                for (size_t i = 0; i < extra; ++i) {
                    size_t u = clean_users[pick(clean_users.size())];
                    emit(u, home_channel(u), benign_text(), std::nullopt, 2, 30);
                }
            }
        }
    }

    Corpus run() {
        setup_population();
        warmup_phase();
        labeled_phase();
        corpus.sort_and_index();
        return std::move(corpus);
    }
};

}  // namespace

Corpus generate_synthetic(const SynthConfig& cfg) {
    if (cfg.n_abuse == 0 || cfg.n_nonabuse == 0 || cfg.n_users == 0 || cfg.n_channels == 0)
        throw std::runtime_error("generate_synthetic: all counts must be positive");
    if (cfg.obfuscation_rate < 0.0 || cfg.obfuscation_rate > 1.0)
        throw std::runtime_error("generate_synthetic: obfuscation_rate must be in [0,1]");
    if (cfg.rich_history_fraction < 0.0 || cfg.rich_history_fraction > 1.0)
        throw std::runtime_error("generate_synthetic: rich_history_fraction must be in [0,1]");
    if (cfg.n_users < 5)
        throw std::runtime_error("generate_synthetic: n_users must be at least 5");
    if (cfg.n_channels < 2)
        throw std::runtime_error("generate_synthetic: n_channels must be at least 2");
    Generator gen(cfg);
    return gen.run();
}

}  // namespace abusedet
