#include "advtext/textcore.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "advtext/errors.hpp"

namespace advtext {

namespace {

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;
}

bool is_punct_token(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return !is_word_byte(c); });
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open file: " + path);
  return in;
}

}  // namespace

const char* to_string(Pos pos) {
  switch (pos) {
    case Pos::Noun: return "NOUN";
    case Pos::Verb: return "VERB";
    case Pos::Adj: return "ADJ";
    case Pos::Adv: return "ADV";
    default: return "OTHER";
  }
}

Pos pos_from_string(std::string_view s) {
  if (s == "NOUN") return Pos::Noun;
  if (s == "VERB") return Pos::Verb;
  if (s == "ADJ") return Pos::Adj;
  if (s == "ADV") return Pos::Adv;
  if (s == "OTHER") return Pos::Other;
  throw Error(Errc::MalformedRecord, "unknown POS tag: " + std::string(s));
}

std::string normalize(std::string_view surface) {
  std::string out(surface);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string word;
  auto flush_word = [&] {
    if (word.empty()) return;
    Token t;
    t.surface = word;
    t.normalized = normalize(word);
    t.position = static_cast<int>(tokens.size());
    tokens.push_back(std::move(t));
    word.clear();
  };
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      flush_word();
    } else if (is_word_byte(c)) {
      word.push_back(static_cast<char>(c));
    } else {
      flush_word();
      Token t;
      t.surface = std::string(1, static_cast<char>(c));
      t.normalized = t.surface;
      t.pos = Pos::Other;
      t.position = static_cast<int>(tokens.size());
      tokens.push_back(std::move(t));
    }
  }
  flush_word();
  return tokens;
}

Pos tag_word(const std::string& normalized, const PosLexicon& lexicon) {
  if (is_punct_token(normalized)) return Pos::Other;
  if (auto it = lexicon.find(normalized); it != lexicon.end()) {
    return it->second;
  }
  auto ends_with = [&](std::string_view suffix) {
    return normalized.size() > suffix.size() &&
           normalized.compare(normalized.size() - suffix.size(), suffix.size(),
                              suffix) == 0;
  };
  if (ends_with("ly")) return Pos::Adv;
  if (ends_with("ous") || ends_with("ful") || ends_with("ive") ||
      ends_with("able")) {
    return Pos::Adj;
  }
  return Pos::Other;
}

void tag_pos(std::vector<Token>& tokens, const PosLexicon& lexicon) {
  for (auto& t : tokens) t.pos = tag_word(t.normalized, lexicon);
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !is_punct_token(tokens[i].surface)) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

PosLexicon load_pos_lexicon(const std::string& path) {
  auto in = open_or_throw(path);
  PosLexicon lex;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(Errc::MalformedRecord,
                  path + ":" + std::to_string(lineno) + ": expected word<TAB>TAG");
    }
    std::string word = normalize(line.substr(0, tab));
    Pos tag = pos_from_string(line.substr(tab + 1));
    lex.emplace(std::move(word), tag);  // first entry wins
  }
  return lex;
}

namespace {

// RFC 4180 records; returns false at EOF.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields,
                     int& lineno) {
  fields.clear();
  if (in.peek() == EOF) return false;
  std::string field;
  bool quoted = false;
  ++lineno;
  for (int ci = in.get(); ; ci = in.get()) {
    if (ci == EOF) {
      fields.push_back(field);
      return true;
    }
    char c = static_cast<char>(ci);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++lineno;
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c == '\r') {
      // swallow; newline follows
    } else if (c == '\n') {
      fields.push_back(field);
      return true;
    } else {
      field.push_back(c);
    }
  }
}

Document make_document(std::string id, std::string text, std::string label,
                       std::string subcategory, const PosLexicon& lexicon) {
  Document doc;
  doc.id = std::move(id);
  doc.raw = std::move(text);
  doc.label = std::move(label);
  doc.subcategory = std::move(subcategory);
  doc.tokens = tokenize(doc.raw);
  tag_pos(doc.tokens, lexicon);
  return doc;
}

Corpus finalize_corpus(std::vector<Document> docs) {
  Corpus corpus;
  std::set<std::string> labels, subcats, ids;
  for (const auto& d : docs) {
    if (!ids.insert(d.id).second) {
      throw Error(Errc::MalformedRecord, "duplicate document id: " + d.id);
    }
    labels.insert(d.label);
    if (!d.subcategory.empty()) subcats.insert(d.subcategory);
  }
  corpus.documents = std::move(docs);
  corpus.labels.assign(labels.begin(), labels.end());
  corpus.subcategories.assign(subcats.begin(), subcats.end());
  return corpus;
}

}  // namespace

Corpus load_corpus_csv(const std::string& path, const PosLexicon& lexicon) {
  auto in = open_or_throw(path);
  std::vector<std::string> fields;
  int lineno = 0;
  if (!read_csv_record(in, fields, lineno) || fields.size() != 4 ||
      fields[0] != "id" || fields[1] != "text" || fields[2] != "label" ||
      fields[3] != "subcategory") {
    throw Error(Errc::MalformedRecord,
                path + ": expected header id,text,label,subcategory");
  }
  std::vector<Document> docs;
  while (read_csv_record(in, fields, lineno)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing newline
    if (fields.size() != 4) {
      throw Error(Errc::MalformedRecord,
                  path + ":" + std::to_string(lineno) + ": expected 4 fields, got " +
                      std::to_string(fields.size()));
    }
    if (fields[2].empty()) {
      throw Error(Errc::MalformedRecord,
                  path + ":" + std::to_string(lineno) + ": missing label");
    }
    docs.push_back(make_document(fields[0], fields[1], fields[2], fields[3],
                                 lexicon));
  }
  return finalize_corpus(std::move(docs));
}

Corpus load_corpus_dir(const std::string& root, const PosLexicon& lexicon) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) {
    throw Error(Errc::IoError, "not a directory: " + root);
  }
  std::vector<Document> docs;
  std::vector<fs::path> labels_dirs;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory()) labels_dirs.push_back(e.path());
  }
  std::sort(labels_dirs.begin(), labels_dirs.end());
  for (const auto& label_dir : labels_dirs) {
    std::vector<fs::path> subcat_dirs;
    for (const auto& e : fs::directory_iterator(label_dir)) {
      if (e.is_directory()) subcat_dirs.push_back(e.path());
    }
    std::sort(subcat_dirs.begin(), subcat_dirs.end());
    for (const auto& subcat_dir : subcat_dirs) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(subcat_dir)) {
        if (e.is_regular_file() && e.path().extension() == ".txt") {
          files.push_back(e.path());
        }
      }
      std::sort(files.begin(), files.end());
      for (const auto& file : files) {
        auto in = open_or_throw(file.string());
        std::ostringstream text;
        text << in.rdbuf();
        docs.push_back(make_document(file.stem().string(), text.str(),
                                     label_dir.filename().string(),
                                     subcat_dir.filename().string(), lexicon));
      }
    }
  }
  return finalize_corpus(std::move(docs));
}

}  // namespace advtext
