#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "advtext/attack.hpp"
#include "advtext/candidates.hpp"
#include "advtext/scoring.hpp"

namespace advtext {

std::string attack_result_to_json(const AttackResult& r);
AttackResult attack_result_from_json(const std::string& line,
                                     const PosLexicon& lexicon);

// One JSON object per line, document order.
void results_to_jsonl(const std::vector<AttackResult>& results,
                      std::ostream& out);
std::vector<AttackResult> results_from_jsonl(const std::string& path,
                                             const PosLexicon& lexicon);

std::string keyword_sets_to_json(const KeywordSets& ks);

std::string ranking_to_json(const ContributionRanking& ranking);

}  // namespace advtext
