// MusicXML ingestion and emission: score-partwise documents in, arranged
// written-pitch scores out, with unmodeled markup carried through.

#ifndef ARRANGE_MUSICXML_HPP
#define ARRANGE_MUSICXML_HPP

#include <boost/property_tree/ptree.hpp>
#include <string>
#include <vector>

#include "arrange/instruments.hpp"
#include "arrange/score.hpp"
#include "arrange/search.hpp"

namespace arranger {

/// A parsed score plus the original document tree, kept so that elements
/// the arranger does not model (dynamics, lyrics, directions) survive
/// re-emission untouched.
struct ScoreDocument {
  Piece piece;
  boost::property_tree::ptree doc;        // full source document
  std::vector<std::string> part_xml_ids;  // piece.parts[i] <-> <part id=...>
};

/// Parses a score-partwise MusicXML document. Throws ParseError for
/// malformed XML, score-timewise roots, chords or multiple voices in a
/// part, and pitches outside A0..C8.
ScoreDocument loadMusicXml(const std::string& bytes);

/// Emits the arranged score: one part per slot in slot order, notes shifted
/// by the chosen transpositions and spelled in each instrument's written
/// key, with key signatures, clefs, and transpose metadata set per slot.
std::string saveMusicXml(const ArrangementResult& result,
                         const ScoreDocument& source, const SlotList& slots);

}  // namespace arranger

#endif  // ARRANGE_MUSICXML_HPP
