#pragma once

#include <cstdint>
#include <string>

namespace advtext::fixture {

// Writes the desk-scale demo corpus (train.csv, test.csv) and matching
// 50-dim embeddings (embeddings.txt) into `dir`. Two classes (neg, pos),
// three subcategories (action, comedy, drama); each (class, genre) cell
// carries a pivot word that is globally distinctive of the opposite class
// but locally distinctive of its own, so genre keywords have bite.
// Deterministic given the seed.
void write_fixture(const std::string& dir, std::uint64_t seed,
                   int train_docs = 1400, int test_docs = 600);

}  // namespace advtext::fixture
