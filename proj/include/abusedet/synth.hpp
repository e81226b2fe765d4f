#pragma once

#include <cstdint>

#include "abusedet/corpus.hpp"

namespace abusedet {

struct SynthConfig {
    size_t n_abuse = 779;
    size_t n_nonabuse = 1558;
    size_t n_users = 60;
    size_t n_channels = 12;
    double obfuscation_rate = 0.35;
    // Fraction of clean users given enough warmup history for PNE eligibility.
    double rich_history_fraction = 0.7;
    uint64_t seed = 42;
};

// Deterministic synthetic chat corpus: benign game talk from clean users,
// planted abusive behaviors from a small abuser pool, reaction traffic after
// abuse, and warmup history so responder language models have material.
Corpus generate_synthetic(const SynthConfig& cfg);

}  // namespace abusedet
