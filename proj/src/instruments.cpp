#include "arrange/instruments.hpp"

#include <cctype>
#include <sstream>

namespace arranger {

namespace {

// The two input files use a flat subset of TOML: optional [table] headers
// and `key = value` lines where the value is a bare integer or a quoted
// string. This parser covers exactly that subset.
struct TomlValue {
  std::string text;
  bool quoted = false;
  int line = 0;
};

struct TomlTable {
  std::string name;  // empty for the root table
  std::vector<std::pair<std::string, TomlValue>> entries;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<TomlTable> parseTomlSubset(const std::string& text) {
  std::vector<TomlTable> tables;
  tables.push_back({"", {}});
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    // Strip comments, respecting quoted strings.
    bool in_quote = false;
    std::string line;
    for (char c : raw) {
      if (c == '"') in_quote = !in_quote;
      if (c == '#' && !in_quote) break;
      line += c;
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError("line " + std::to_string(line_no) +
                         ": unterminated table header");
      }
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": empty table name");
      }
      tables.push_back({name, {}});
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected `key = value`");
    }
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected `key = value`");
    }
    TomlValue tv{val, false, line_no};
    if (val.front() == '"') {
      if (val.size() < 2 || val.back() != '"') {
        throw ParseError("line " + std::to_string(line_no) +
                         ": unterminated string");
      }
      tv.text = val.substr(1, val.size() - 2);
      tv.quoted = true;
    }
    tables.back().entries.emplace_back(key, tv);
  }
  return tables;
}

const TomlValue& requireField(const TomlTable& table, const std::string& key) {
  for (const auto& [k, v] : table.entries) {
    if (k == key) return v;
  }
  throw ParseError("instrument \"" + table.name + "\" is missing field \"" +
                   key + "\"");
}

const TomlValue* findField(const TomlTable& table, const std::string& key) {
  for (const auto& [k, v] : table.entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

}  // namespace

InstrumentCatalog loadInstrumentMetadata(const std::string& text) {
  InstrumentCatalog catalog;
  for (const TomlTable& table : parseTomlSubset(text)) {
    if (table.name.empty()) {
      if (!table.entries.empty()) {
        throw ParseError("instrument metadata entries must live in a table");
      }
      continue;
    }
    Instrument inst;
    inst.id = table.name;
    inst.display_name = requireField(table, "name").text;
    inst.range.lo = parseNoteName(requireField(table, "minimum").text);
    inst.range.hi = parseNoteName(requireField(table, "maximum").text);
    inst.key = parsePitchClassName(requireField(table, "key").text);
    if (inst.range.lo > inst.range.hi) {
      throw ParseError("instrument \"" + inst.id +
                       "\": minimum is above maximum");
    }
    if (const TomlValue* clef = findField(table, "clef")) {
      if (clef->text != "treble" && clef->text != "bass") {
        throw ParseError("instrument \"" + inst.id +
                         "\": clef must be \"treble\" or \"bass\"");
      }
      inst.clef = clef->text;
    }
    catalog[inst.id] = inst;
  }
  return catalog;
}

SlotList loadArrangement(const std::string& text,
                         const InstrumentCatalog& catalog) {
  SlotList slots;
  for (const TomlTable& table : parseTomlSubset(text)) {
    if (!table.name.empty()) {
      throw ParseError("arrangement file must not contain tables");
    }
    for (const auto& [id, value] : table.entries) {
      auto it = catalog.find(id);
      if (it == catalog.end()) {
        throw ParseError("unknown instrument \"" + id + "\" (line " +
                         std::to_string(value.line) + ")");
      }
      int count = 0;
      try {
        std::size_t pos = 0;
        count = std::stoi(value.text, &pos);
        if (pos != value.text.size() || value.quoted) count = 0;
      } catch (const std::exception&) {
        count = 0;
      }
      if (count < 1) {
        throw ParseError("instrument \"" + id +
                         "\" needs a positive integer count (line " +
                         std::to_string(value.line) + ")");
      }
      for (int i = 0; i < count; ++i) slots.slots.push_back(it->second);
    }
  }
  if (slots.slots.empty()) {
    throw ParseError("arrangement file lists no instruments");
  }
  return slots;
}

const InstrumentCatalog& defaultCatalog() {
  // Ranges are sounding pitch, conservative ensemble-writing limits.
  static const InstrumentCatalog catalog = loadInstrumentMetadata(R"toml(
[piccolo]
name = "Piccolo"
minimum = "D5"
maximum = "C8"
key = "C"

[flute]
name = "Flute"
minimum = "C4"
maximum = "D7"
key = "C"

[oboe]
name = "Oboe"
minimum = "Bb3"
maximum = "A6"
key = "C"

[clarinet]
name = "Clarinet"
minimum = "D3"
maximum = "Bb6"
key = "Bb"

[bassoon]
name = "Bassoon"
minimum = "Bb1"
maximum = "Eb5"
key = "C"
clef = "bass"

[soprano-sax]
name = "SopranoSaxophone"
minimum = "Ab3"
maximum = "E6"
key = "Bb"

[alto-sax]
name = "AltoSaxophone"
minimum = "Db3"
maximum = "Bb5"
key = "Eb"

[tenor-sax]
name = "TenorSaxophone"
minimum = "Ab2"
maximum = "E5"
key = "Bb"

[baritone-sax]
name = "BaritoneSaxophone"
minimum = "Db2"
maximum = "Ab4"
key = "Eb"
clef = "bass"

[trumpet]
name = "Trumpet"
minimum = "E3"
maximum = "Bb5"
key = "Bb"

[horn]
name = "Horn"
minimum = "B1"
maximum = "F5"
key = "F"

[trombone]
name = "Trombone"
minimum = "E2"
maximum = "F5"
key = "C"
clef = "bass"

[tuba]
name = "Tuba"
minimum = "D1"
maximum = "F4"
key = "C"
clef = "bass"

[violin]
name = "Violin"
minimum = "G3"
maximum = "A7"
key = "C"

[viola]
name = "Viola"
minimum = "C3"
maximum = "E6"
key = "C"

[cello]
name = "Violoncello"
minimum = "C2"
maximum = "C6"
key = "C"
clef = "bass"

[double-bass]
name = "Contrabass"
minimum = "E1"
maximum = "G4"
key = "C"
clef = "bass"

[soprano]
name = "Soprano"
minimum = "C4"
maximum = "C6"
key = "C"

[alto]
name = "Alto"
minimum = "F3"
maximum = "F5"
key = "C"

[tenor]
name = "Tenor"
minimum = "C3"
maximum = "C5"
key = "C"

[bass]
name = "Bass"
minimum = "E2"
maximum = "E4"
key = "C"
clef = "bass"
)toml");
  return catalog;
}

}  // namespace arranger
