// Instrument metadata catalog and arrangement-request loading from TOML,
// expanded into instrument slots.

#ifndef ARRANGE_INSTRUMENTS_HPP
#define ARRANGE_INSTRUMENTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arrange/pitch.hpp"
#include "arrange/score.hpp"

namespace arranger {

struct Instrument {
  std::string id;            // catalog key, e.g. "alto-sax"
  std::string display_name;  // e.g. "AltoSaxophone"
  PartRange range;           // sounding pitches
  PitchClass key;            // written C sounds as this pitch class
  std::optional<std::string> clef;  // "treble" or "bass"
};

using InstrumentCatalog = std::map<std::string, Instrument>;

/// One slot per requested part; an entry "alto-sax = 2" yields two
/// consecutive slots referencing the same instrument.
struct SlotList {
  std::vector<Instrument> slots;

  std::size_t size() const { return slots.size(); }
  const Instrument& operator[](std::size_t i) const { return slots[i]; }
};

/// Parses the instrument metadata file: one TOML table per instrument with
/// name, minimum, maximum, key, and an optional clef.
InstrumentCatalog loadInstrumentMetadata(const std::string& text);

/// Parses the arrangement request (flat `id = count` pairs) and expands it
/// against the catalog, preserving file order.
SlotList loadArrangement(const std::string& text,
                         const InstrumentCatalog& catalog);

/// Catalog of common instruments bundled with the tool.
const InstrumentCatalog& defaultCatalog();

}  // namespace arranger

#endif  // ARRANGE_INSTRUMENTS_HPP
