// Shared test helpers: score/slot builders and a MusicXML fixture writer.

#ifndef ARRANGE_TESTS_FIXTURES_HPP
#define ARRANGE_TESTS_FIXTURES_HPP

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arrange/instruments.hpp"
#include "arrange/pitch.hpp"
#include "arrange/score.hpp"

namespace arranger::testing {

inline Part makePart(std::string id,
                     const std::vector<std::string>& note_names) {
  Part part;
  part.id = std::move(id);
  part.measure_count = 1;
  for (const std::string& name : note_names) {
    NoteEvent ev;
    ev.duration = 1;
    if (name != "r") ev.pitch = parseNoteName(name);
    part.events.push_back(ev);
  }
  return part;
}

inline Piece makePiece(int fifths, std::vector<Part> parts) {
  Piece piece;
  piece.key = KeySignature{fifths};
  piece.parts = std::move(parts);
  return piece;
}

inline Instrument makeInstrument(std::string id, const std::string& lo,
                                 const std::string& hi, int key_pc = 0) {
  Instrument inst;
  inst.id = std::move(id);
  inst.display_name = inst.id;
  inst.range = {parseNoteName(lo), parseNoteName(hi)};
  inst.key = PitchClass{key_pc};
  return inst;
}

inline SlotList makeSlots(std::vector<Instrument> instruments) {
  SlotList slots;
  slots.slots = std::move(instruments);
  return slots;
}

// Random but guaranteed-feasible search instance: part i is generated
// inside slot i's range, so the identity assignment works at key offset 0.
struct RandomInstance {
  Piece piece;
  SlotList slots;
};

inline RandomInstance randomInstance(std::mt19937& rng, int max_parts = 4) {
  std::uniform_int_distribution<int> part_count(1, max_parts);
  std::uniform_int_distribution<int> width_dist(12, 36);
  std::uniform_int_distribution<int> key_dist(0, 11);
  std::uniform_int_distribution<int> fifths_dist(-7, 7);
  std::uniform_int_distribution<int> note_count(1, 8);
  std::uniform_int_distribution<int> dup(0, 3);

  RandomInstance inst;
  int n = part_count(rng);
  for (int s = 0; s < n; ++s) {
    Instrument slot;
    if (s > 0 && dup(rng) == 0) {
      slot = inst.slots.slots[s - 1];  // duplicate instrument slot
    } else {
      int width = width_dist(rng);
      int lo = std::uniform_int_distribution<int>(1, 88 - width)(rng);
      slot.id = "inst" + std::to_string(s);
      slot.display_name = slot.id;
      slot.range = {{lo}, {lo + width}};
      slot.key = PitchClass{key_dist(rng)};
    }
    inst.slots.slots.push_back(slot);
  }

  inst.piece.key = KeySignature{fifths_dist(rng)};
  for (int i = 0; i < n; ++i) {
    const PartRange& r = inst.slots[i].range;
    Part part;
    part.id = "P" + std::to_string(i + 1);
    part.measure_count = 1;
    std::uniform_int_distribution<int> pitch(r.lo.value, r.hi.value);
    int notes = note_count(rng);
    for (int j = 0; j < notes; ++j) {
      NoteEvent ev;
      ev.duration = 1;
      ev.pitch = PitchIndex{pitch(rng)};
      part.events.push_back(ev);
    }
    inst.piece.parts.push_back(std::move(part));
  }
  return inst;
}

// --- MusicXML fixture builder ---------------------------------------------
//
// Tokens, one per event:
//   "C4:2"   note, duration 2 divisions (accidentals as # / b)
//   "r:1"    rest
//   "C4:2t"  note starting a tie, "C4:2T" stopping one
//   "+E4:2"  chord continuation note (for polyphony-error fixtures)
//   "gD4"    grace note

struct XmlToken {
  char step = 0;
  int alter = 0;
  int octave = 0;
  int duration = 0;
  bool rest = false;
  bool chord = false;
  bool grace = false;
  bool tie_start = false;
  bool tie_stop = false;
};

inline XmlToken parseToken(std::string text) {
  XmlToken tok;
  if (text.front() == '+') {
    tok.chord = true;
    text.erase(0, 1);
  }
  if (text.front() == 'g') {
    tok.grace = true;
    text.erase(0, 1);
  }
  std::string pitch = text;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    pitch = text.substr(0, colon);
    std::string dur = text.substr(colon + 1);
    while (!dur.empty() && (dur.back() == 't' || dur.back() == 'T')) {
      if (dur.back() == 't') tok.tie_start = true;
      if (dur.back() == 'T') tok.tie_stop = true;
      dur.pop_back();
    }
    tok.duration = std::stoi(dur);
  }
  if (pitch == "r") {
    tok.rest = true;
    return tok;
  }
  tok.step = pitch[0];
  std::size_t i = 1;
  for (; i < pitch.size() && (pitch[i] == '#' || pitch[i] == 'b'); ++i) {
    tok.alter += pitch[i] == '#' ? 1 : -1;
  }
  tok.octave = std::stoi(pitch.substr(i));
  return tok;
}

/// Builds a score-partwise document. Each part is a list of measures; each
/// measure is a space-separated token string.
inline std::string makeMusicXml(
    int fifths, int divisions,
    const std::vector<std::vector<std::string>>& parts) {
  std::ostringstream xml;
  xml << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<score-partwise version=\"3.1\">\n  <part-list>\n";
  for (std::size_t p = 0; p < parts.size(); ++p) {
    xml << "    <score-part id=\"P" << p + 1 << "\"><part-name>Part "
        << p + 1 << "</part-name></score-part>\n";
  }
  xml << "  </part-list>\n";
  for (std::size_t p = 0; p < parts.size(); ++p) {
    xml << "  <part id=\"P" << p + 1 << "\">\n";
    for (std::size_t m = 0; m < parts[p].size(); ++m) {
      xml << "    <measure number=\"" << m + 1 << "\">\n";
      if (m == 0) {
        xml << "      <attributes><divisions>" << divisions
            << "</divisions><key><fifths>" << fifths
            << "</fifths><mode>major</mode></key>"
            << "<time><beats>4</beats><beat-type>4</beat-type></time>"
            << "</attributes>\n";
      }
      std::istringstream tokens(parts[p][m]);
      std::string text;
      while (tokens >> text) {
        XmlToken tok = parseToken(text);
        xml << "      <note>";
        if (tok.grace) xml << "<grace/>";
        if (tok.chord) xml << "<chord/>";
        if (tok.rest) {
          xml << "<rest/>";
        } else {
          xml << "<pitch><step>" << tok.step << "</step>";
          if (tok.alter != 0) xml << "<alter>" << tok.alter << "</alter>";
          xml << "<octave>" << tok.octave << "</octave></pitch>";
        }
        if (!tok.grace) xml << "<duration>" << tok.duration << "</duration>";
        if (tok.tie_start) xml << "<tie type=\"start\"/>";
        if (tok.tie_stop) xml << "<tie type=\"stop\"/>";
        xml << "</note>\n";
      }
      xml << "    </measure>\n";
    }
    xml << "  </part>\n";
  }
  xml << "</score-partwise>\n";
  return xml.str();
}

}  // namespace arranger::testing

#endif  // ARRANGE_TESTS_FIXTURES_HPP
