#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "xindex/corpus.hpp"

namespace xindex::testing {

// Pentad: P1{A}, P2{A}, P3{B}, P4{B,C}, P5{C};
// P3->P1, P4->P1, P5->P1, P4->P2, P5->P2, P1->P3, P2->P3.
inline std::vector<PaperRecord> pentad_papers() {
  return {
      {"P1", "First", {"A"}, 2001},  {"P2", "Second", {"A"}, 2002},
      {"P3", "Third", {"B"}, 2003},  {"P4", "Fourth", {"B", "C"}, 2004},
      {"P5", "Fifth", {"C"}, 2005},
  };
}

inline std::vector<CitationPair> pentad_edges() {
  return {{"P3", "P1"}, {"P4", "P1"}, {"P5", "P1"}, {"P4", "P2"},
          {"P5", "P2"}, {"P1", "P3"}, {"P2", "P3"}};
}

inline CitationGraph pentad_graph() { return build_graph(pentad_papers(), pentad_edges()); }

inline const char* kPentadMetadata =
    "paper_id,title,authors,year\n"
    "P1,First,A,2001\n"
    "P2,Second,A,2002\n"
    "P3,Third,B,2003\n"
    "P4,Fourth,B|C,2004\n"
    "P5,Fifth,C,2005\n";

inline const char* kPentadCitations =
    "citing_id,cited_id\n"
    "P3,P1\nP4,P1\nP5,P1\nP4,P2\nP5,P2\nP1,P3\nP2,P3\n";

}  // namespace xindex::testing
