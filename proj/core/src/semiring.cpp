#include "mwp/semiring.hpp"

#include <sstream>

namespace mwp {

char to_char(Mwp v) { return to_char(widen(v)); }

char to_char(MwpInf v) {
  switch (v) {
    case MwpInf::kZero: return '0';
    case MwpInf::kM: return 'm';
    case MwpInf::kW: return 'w';
    case MwpInf::kP: return 'p';
    case MwpInf::kInf: return 'i';
  }
  return '?';
}

std::optional<MwpInf> mwpinf_from_char(char c) {
  switch (c) {
    case '0': return MwpInf::kZero;
    case 'm': return MwpInf::kM;
    case 'w': return MwpInf::kW;
    case 'p': return MwpInf::kP;
    case 'i': return MwpInf::kInf;
    default: return std::nullopt;
  }
}

std::string render(const MwpMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ' ';
      out += to_char(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

MwpMatrix parse_mwp_matrix(std::string_view text) {
  std::vector<std::vector<MwpInf>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string tok;
    std::vector<MwpInf> row;
    while (cells >> tok) {
      auto v = tok.size() == 1 ? mwpinf_from_char(tok[0]) : std::nullopt;
      if (!v) throw std::invalid_argument("bad matrix entry '" + tok + "'");
      row.push_back(*v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  MwpMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw DimensionError("matrix text is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace mwp
