#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace advtext {

enum class Pos { Noun, Verb, Adj, Adv, Other };

const char* to_string(Pos pos);
Pos pos_from_string(std::string_view s);

struct Token {
  std::string surface;
  std::string normalized;  // case-folded surface
  Pos pos = Pos::Other;
  int position = 0;

  bool operator==(const Token&) const = default;
};

struct Document {
  std::string id;
  std::vector<Token> tokens;
  std::string label;
  std::string subcategory;  // empty = none
  std::string raw;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<std::string> labels;         // sorted, distinct
  std::vector<std::string> subcategories;  // sorted, distinct, non-empty entries only
};

// word -> most frequent tag; duplicate file entries keep the first one
using PosLexicon = std::unordered_map<std::string, Pos>;

std::string normalize(std::string_view surface);

// Splits on whitespace; punctuation characters become single-char OTHER
// tokens. Alphanumerics and bytes >= 0x80 are word characters.
std::vector<Token> tokenize(std::string_view text);

// Lexicon entry, else suffix rules ("ly" -> ADV; "ous","ful","ive","able"
// -> ADJ), else OTHER. Pure punctuation is always OTHER.
Pos tag_word(const std::string& normalized, const PosLexicon& lexicon);
void tag_pos(std::vector<Token>& tokens, const PosLexicon& lexicon);

// Single-space join with punctuation attached to the preceding token.
// tokenize(detokenize(T)) == T for any T produced by tokenize.
std::string detokenize(std::span<const Token> tokens);

PosLexicon load_pos_lexicon(const std::string& path);

// CSV: UTF-8, header `id,text,label,subcategory`, RFC 4180 quoting.
Corpus load_corpus_csv(const std::string& path, const PosLexicon& lexicon);

// Directory layout: <root>/<label>/<subcategory>/<id>.txt
Corpus load_corpus_dir(const std::string& root, const PosLexicon& lexicon);

}  // namespace advtext
