// Copyright 2026 The Filtrate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "filtrate/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace filtrate {

namespace {

// depth < 0 means compact mode (inside an array).
void write_node(std::ostream &os, const Json &node, int depth) {
  if (node.is_number_float()) {
    os << format17(node.get<double>());
    return;
  }
  if (node.is_array()) {
    os << '[';
    bool first = true;
    for (const Json &child : node) {
      if (!first) {
        os << ',';
      }
      first = false;
      write_node(os, child, -1);
    }
    os << ']';
    return;
  }
  if (node.is_object()) {
    if (depth < 0) {
      os << '{';
      bool first = true;
      for (auto it = node.begin(); it != node.end(); ++it) {
        if (!first) {
          os << ',';
        }
        first = false;
        os << Json(it.key()).dump() << ':';
        write_node(os, it.value(), -1);
      }
      os << '}';
      return;
    }
    os << "{\n";
    const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
    bool first = true;
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (!first) {
        os << ",\n";
      }
      first = false;
      os << pad << Json(it.key()).dump() << ": ";
      write_node(os, it.value(), depth + 1);
    }
    os << '\n' << std::string(static_cast<std::size_t>(depth) * 2, ' ') << '}';
    return;
  }
  os << node.dump();
}

}  // namespace

std::string format17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string dump17(const Json &doc) {
  std::ostringstream os;
  write_node(os, doc, 0);
  return os.str();
}

Json complex_json(const Cplx &value) {
  return Json::array({value.real(), value.imag()});
}

Json vector_json(const CVector &v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_json(v(i)));
  }
  return out;
}

Json matrix_json(const CMatrix &m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_json(m(r, c)));
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace filtrate
