#include "arrange/musicxml.hpp"

#include <boost/property_tree/xml_parser.hpp>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace arranger {

namespace pt = boost::property_tree;

namespace {

const pt::ptree* findChild(const pt::ptree& node, const std::string& name) {
  auto it = node.find(name);
  return it == node.not_found() ? nullptr : &it->second;
}

pt::ptree* findChild(pt::ptree& node, const std::string& name) {
  auto it = node.find(name);
  return it == node.not_found() ? nullptr : &it->second;
}

int letterSemitone(char step) {
  switch (step) {
    case 'C': return 0;
    case 'D': return 2;
    case 'E': return 4;
    case 'F': return 5;
    case 'G': return 7;
    case 'A': return 9;
    case 'B': return 11;
    default:
      throw ParseError(std::string("invalid pitch step \"") + step + "\"");
  }
}

int letterIndex(char step) {  // C=0 .. B=6
  static const std::string kLetters = "CDEFGAB";
  return static_cast<int>(kLetters.find(step));
}

struct RawEvent {
  NoteEvent event;
  int divisions = 1;  // divisions in effect when the event was read
};

struct RawPart {
  std::string xml_id;
  std::string name;
  std::vector<RawEvent> events;
  int measure_count = 0;
};

[[noreturn]] void polyphonyError(const std::string& part, int measure,
                                 const std::string& what) {
  throw ParseError("part \"" + part + "\", measure " +
                   std::to_string(measure + 1) + ": " + what +
                   " (only monophonic parts are supported)");
}

int parsePitchElement(const pt::ptree& pitch, const std::string& part_id,
                      int measure) {
  auto step = pitch.get_optional<std::string>("step");
  auto octave = pitch.get_optional<int>("octave");
  if (!step || step->size() != 1 || !octave) {
    throw ParseError("part \"" + part_id + "\", measure " +
                     std::to_string(measure + 1) + ": malformed pitch");
  }
  int alter = pitch.get<int>("alter", 0);
  int value = 12 * (*octave + 1) + letterSemitone((*step)[0]) + alter - 20;
  if (!onLattice(value)) {
    throw ParseError("part \"" + part_id + "\", measure " +
                     std::to_string(measure + 1) + ": pitch " + *step +
                     std::to_string(*octave) + " is outside A0..C8");
  }
  return value;
}

RawPart parsePart(const pt::ptree& part_node) {
  RawPart part;
  part.xml_id = part_node.get<std::string>("<xmlattr>.id", "");
  int divisions = 1;
  int measure_index = -1;
  std::set<std::string> voices;
  for (const auto& [mname, measure] : part_node) {
    if (mname != "measure") continue;
    ++measure_index;
    for (const auto& [name, node] : measure) {
      if (name == "attributes") {
        divisions = node.get<int>("divisions", divisions);
        if (divisions < 1) {
          throw ParseError("part \"" + part.xml_id + "\": divisions must be " +
                           "a positive integer");
        }
      } else if (name == "backup") {
        polyphonyError(part.xml_id, measure_index, "overlapping voices");
      } else if (name == "note") {
        if (findChild(node, "chord") != nullptr) {
          polyphonyError(part.xml_id, measure_index, "chord found");
        }
        if (auto voice = node.get_optional<std::string>("voice")) {
          voices.insert(*voice);
          if (voices.size() > 1) {
            polyphonyError(part.xml_id, measure_index, "multiple voices");
          }
        }
        if (findChild(node, "grace") != nullptr) {
          continue;  // graces carry no duration and are excluded from stats
        }
        NoteEvent ev;
        ev.measure_index = measure_index;
        ev.duration = node.get<int>("duration", 0);
        if (ev.duration <= 0) {
          throw ParseError("part \"" + part.xml_id + "\", measure " +
                           std::to_string(measure_index + 1) +
                           ": note without a positive duration");
        }
        ev.notated_type = node.get<std::string>("type", "");
        for (const auto& [tname, tie] : node) {
          if (tname != "tie") continue;
          std::string type = tie.get<std::string>("<xmlattr>.type", "");
          if (type == "start") ev.tie_start = true;
          if (type == "stop") ev.tie_stop = true;
        }
        if (const pt::ptree* pitch = findChild(node, "pitch")) {
          ev.pitch =
              PitchIndex{parsePitchElement(*pitch, part.xml_id, measure_index)};
        } else if (findChild(node, "rest") == nullptr) {
          throw ParseError("part \"" + part.xml_id + "\", measure " +
                           std::to_string(measure_index + 1) +
                           ": note has neither pitch nor rest");
        }
        part.events.push_back({ev, divisions});
      }
    }
  }
  part.measure_count = measure_index + 1;
  return part;
}

// --- emission helpers -----------------------------------------------------

pt::ptree makeKeyElement(int fifths) {
  pt::ptree key;
  key.put("fifths", fifths);
  key.put("mode", "major");
  return key;
}

pt::ptree makeClefElement(const std::string& clef) {
  pt::ptree node;
  if (clef == "bass") {
    node.put("sign", "F");
    node.put("line", 4);
  } else {
    node.put("sign", "G");
    node.put("line", 2);
  }
  return node;
}

void setOrInsertAfter(pt::ptree& parent, const std::string& name,
                      pt::ptree value, const std::string& after,
                      bool append_if_missing) {
  if (pt::ptree* existing = findChild(parent, name)) {
    *existing = std::move(value);
    return;
  }
  auto pos = append_if_missing ? parent.end() : parent.begin();
  for (auto it = parent.begin(); it != parent.end(); ++it) {
    if (it->first == after) {
      pos = std::next(it);
      break;
    }
  }
  parent.insert(pos, {name, std::move(value)});
}

std::string clefFor(const Instrument& inst) {
  if (inst.clef) return *inst.clef;
  return inst.range.median() < 40.0 ? "bass" : "treble";
}

void rewritePitch(pt::ptree& pitch, int written_value, KeySignature key) {
  SpelledPitch sp = spellPitch(written_value, key);
  pitch.clear();
  pitch.put("step", std::string(1, sp.step));
  if (sp.alter != 0) pitch.put("alter", sp.alter);
  pitch.put("octave", sp.octave);
}

// Diatonic letter-step offset matching a chromatic transposition of
// (key - 12): written C maps to the tonic letter of the sounding key.
int diatonicOffset(PitchClass instrument_key) {
  if (instrument_key.value == 0) return 0;
  SpelledPitch tonic =
      spellPitch(instrument_key.value + 40 - 12, majorKeyFifths(instrument_key));
  return letterIndex(tonic.step) - 7;
}

void transformPartNode(pt::ptree& part_node, int shift,
                       const Instrument& inst, PitchClass concert_pc) {
  int chromatic = inst.key.value == 0 ? 0 : inst.key.value - 12;
  KeySignature written_fifths =
      majorKeyFifths(writtenPitchClass(concert_pc, inst.key));

  bool first_attributes = true;
  for (auto& [mname, measure] : part_node) {
    if (mname != "measure") continue;
    for (auto& [name, node] : measure) {
      if (name == "attributes") {
        if (first_attributes) {
          first_attributes = false;
          setOrInsertAfter(node, "key", makeKeyElement(written_fifths.fifths),
                           "divisions", /*append_if_missing=*/false);
          setOrInsertAfter(node, "clef", makeClefElement(clefFor(inst)),
                           "time", /*append_if_missing=*/true);
          node.erase("transpose");
          if (chromatic != 0) {
            pt::ptree transpose;
            transpose.put("diatonic", diatonicOffset(inst.key));
            transpose.put("chromatic", chromatic);
            node.push_back({"transpose", std::move(transpose)});
          }
        } else if (pt::ptree* key = findChild(node, "key")) {
          *key = makeKeyElement(written_fifths.fifths);
        }
      } else if (name == "note") {
        if (pt::ptree* pitch = findChild(node, "pitch")) {
          int sounding = 12 * (pitch->get<int>("octave") + 1) +
                         letterSemitone(pitch->get<std::string>("step")[0]) +
                         pitch->get<int>("alter", 0) - 20;
          rewritePitch(*pitch, sounding + shift - chromatic, written_fifths);
        }
        node.erase("accidental");  // stale after respelling
      }
    }
  }
}

}  // namespace

ScoreDocument loadMusicXml(const std::string& bytes) {
  pt::ptree doc;
  try {
    std::istringstream in(bytes);
    pt::read_xml(in, doc,
                 pt::xml_parser::trim_whitespace | pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& err) {
    throw ParseError(std::string("malformed XML: ") + err.what());
  }
  if (findChild(doc, "score-timewise") != nullptr) {
    throw ParseError("score-timewise documents are not supported");
  }
  const pt::ptree* score = findChild(doc, "score-partwise");
  if (score == nullptr) {
    throw ParseError("document has no score-partwise root");
  }

  // Part names from the part-list, keyed by xml id.
  std::map<std::string, std::string> part_names;
  if (const pt::ptree* part_list = findChild(*score, "part-list")) {
    for (const auto& [name, node] : *part_list) {
      if (name != "score-part") continue;
      part_names[node.get<std::string>("<xmlattr>.id", "")] =
          node.get<std::string>("part-name", "");
    }
  }

  std::vector<RawPart> raw_parts;
  for (const auto& [name, node] : *score) {
    if (name != "part") continue;
    RawPart raw = parsePart(node);
    raw.name = part_names.count(raw.xml_id) ? part_names[raw.xml_id] : "";
    raw_parts.push_back(std::move(raw));
  }
  if (raw_parts.empty()) {
    throw ParseError("document contains no parts");
  }
  for (const RawPart& raw : raw_parts) {
    if (raw.measure_count != raw_parts.front().measure_count) {
      throw ParseError("parts disagree on measure count");
    }
  }

  // Normalize durations to a common divisions value across parts.
  int lcm = 1;
  for (const RawPart& raw : raw_parts) {
    for (const RawEvent& ev : raw.events) lcm = std::lcm(lcm, ev.divisions);
  }

  ScoreDocument out;
  out.doc = doc;
  out.piece.divisions = lcm;

  const pt::ptree& first_part = *findChild(*score, "part");
  if (const pt::ptree* measure = findChild(first_part, "measure")) {
    if (const pt::ptree* attrs = findChild(*measure, "attributes")) {
      int fifths = attrs->get<int>("key.fifths", 0);
      if (fifths < -7 || fifths > 7) {
        throw ParseError("key signature fifths out of range: " +
                         std::to_string(fifths));
      }
      out.piece.key = KeySignature{fifths};
      if (const pt::ptree* time = findChild(*attrs, "time")) {
        out.piece.time_signature.beats = time->get<int>("beats", 4);
        out.piece.time_signature.beat_type = time->get<int>("beat-type", 4);
      }
    }
  }

  for (RawPart& raw : raw_parts) {
    Part part;
    part.id = raw.xml_id;
    part.name = raw.name;
    part.measure_count = raw.measure_count;
    for (RawEvent& ev : raw.events) {
      ev.event.duration *= lcm / ev.divisions;
      part.events.push_back(ev.event);
    }
    (void)partRange(part);  // rejects all-rest parts at load time
    out.part_xml_ids.push_back(raw.xml_id);
    out.piece.parts.push_back(std::move(part));
  }
  return out;
}

std::string saveMusicXml(const ArrangementResult& result,
                         const ScoreDocument& source, const SlotList& slots) {
  const pt::ptree& score = source.doc.get_child("score-partwise");
  PitchClass concert_pc = concertPcOfFifths(result.concert_fifths);

  pt::ptree out_score;
  // Header material (work, identification, defaults, credits) carries over.
  for (const auto& [name, node] : score) {
    if (name == "part-list" || name == "part") continue;
    out_score.push_back({name, node});
  }

  // Number duplicate instruments so staves stay distinguishable.
  std::map<std::string, int> id_total;
  for (const Instrument& slot : slots.slots) ++id_total[slot.id];
  std::map<std::string, int> id_seen;

  pt::ptree part_list;
  for (std::size_t j = 0; j < slots.size(); ++j) {
    const Instrument& inst = slots[j];
    std::string display = inst.display_name;
    if (id_total[inst.id] > 1) {
      display += " " + std::to_string(++id_seen[inst.id]);
    }
    pt::ptree score_part;
    score_part.put("<xmlattr>.id", "P" + std::to_string(j + 1));
    score_part.put("part-name", display);
    part_list.push_back({"score-part", std::move(score_part)});
  }
  out_score.push_back({"part-list", std::move(part_list)});

  // Invert the assignment: slot j is played by part slot_to_part[j].
  std::vector<std::size_t> slot_to_part(slots.size());
  for (std::size_t i = 0; i < result.assignment.size(); ++i) {
    slot_to_part[result.assignment[i]] = i;
  }

  for (std::size_t j = 0; j < slots.size(); ++j) {
    std::size_t i = slot_to_part[j];
    const std::string& xml_id = source.part_xml_ids[i];
    pt::ptree part_node;
    for (const auto& [name, node] : score) {
      if (name == "part" &&
          node.get<std::string>("<xmlattr>.id", "") == xml_id) {
        part_node = node;
        break;
      }
    }
    part_node.put("<xmlattr>.id", "P" + std::to_string(j + 1));
    transformPartNode(part_node, result.shifts[i], slots[j], concert_pc);
    out_score.push_back({"part", std::move(part_node)});
  }

  pt::ptree out_doc;
  out_doc.add_child("score-partwise", out_score);
  if (auto version = score.get_optional<std::string>("<xmlattr>.version")) {
    out_doc.put("score-partwise.<xmlattr>.version", *version);
  }

  std::ostringstream os;
  pt::write_xml(os, out_doc,
                pt::xml_parser::xml_writer_settings<std::string>(' ', 2));
  return os.str();
}

}  // namespace arranger
