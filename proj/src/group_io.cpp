#include "overlat/group_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace overlat::permgroup {

StabilizerChain GroupSpec::validate() const {
  StabilizerChain chain = StabilizerChain::build(generators);
  if (expected_order && chain.order() != *expected_order) {
    std::ostringstream msg;
    msg << "group " << name << ": order " << chain.order() << " != expected "
        << *expected_order;
    throw std::runtime_error(msg.str());
  }
  return chain;
}

GroupSpec parse_generator_file(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  GroupSpec spec;
  spec.name = name;
  bool header_seen = false;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::string body = line.substr(start);
    if (!body.empty() && body.back() == '\r') body.pop_back();
    if (!header_seen) {
      std::istringstream hdr(body);
      std::string kw_degree, kw_base;
      int base_flag = -1;
      hdr >> kw_degree >> spec.degree >> kw_base >> base_flag;
      if (hdr.fail() || kw_degree != "degree" || kw_base != "base" ||
          spec.degree <= 0 || (base_flag != 0 && base_flag != 1))
        throw std::invalid_argument("generator file: malformed header line");
      spec.one_based = base_flag == 1;
      header_seen = true;
      continue;
    }
    spec.generators.push_back(parse_cycles(body, spec.degree, spec.one_based));
  }
  if (!header_seen)
    throw std::invalid_argument("generator file: missing header line");
  if (spec.generators.empty())
    throw std::invalid_argument("generator file: no generators");
  return spec;
}

GroupSpec load_generator_file(const std::filesystem::path& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open generator file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_generator_file(buf.str(), name);
}

std::string print_generator_file(const GroupSpec& spec) {
  std::ostringstream out;
  out << "degree " << spec.degree << " base " << (spec.one_based ? 1 : 0) << "\n";
  for (const auto& g : spec.generators)
    out << print_cycles(g, spec.one_based) << "\n";
  return out.str();
}

}  // namespace overlat::permgroup
