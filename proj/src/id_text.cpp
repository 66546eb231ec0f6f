#include "kadlab/id_text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace kadlab {

namespace {

bool is_bin(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c != '0' && c != '1') return false;
    }
    return true;
}

bool is_hex(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return c - 'A' + 10;
}

NodeId parse_bin(const std::string& s) {
    std::vector<int> bits(s.size());
    for (std::size_t p = 0; p < s.size(); ++p) bits[p] = s[p] - '0';
    return NodeId::from_bits(bits);
}

NodeId parse_hex(const std::string& s) {
    std::vector<int> bits;
    bits.reserve(4 * s.size());
    for (char c : s) {
        int v = hex_val(c);
        bits.push_back((v >> 3) & 1);
        bits.push_back((v >> 2) & 1);
        bits.push_back((v >> 1) & 1);
        bits.push_back(v & 1);
    }
    return NodeId::from_bits(bits);
}

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

NodeId parse_id(const std::string& text, std::optional<int> d) {
    std::string s = trimmed(text);
    if (s.empty()) throw DomainError("empty id");
    int len = static_cast<int>(s.size());
    if (d.has_value()) {
        int dd = *d;
        if (len == dd && is_bin(s)) return parse_bin(s);
        if (dd % 4 == 0 && len == dd / 4 && is_hex(s)) return parse_hex(s);
        std::string want = std::to_string(dd) + " binary digits";
        if (dd % 4 == 0) want += " or " + std::to_string(dd / 4) + " hex digits";
        throw DomainError("id '" + s + "' is not " + want);
    }
    if (is_bin(s)) return parse_bin(s);
    if (is_hex(s)) return parse_hex(s);
    throw DomainError("id '" + s + "' is neither binary nor hex");
}

std::vector<NodeId> parse_ids_text(const std::string& text, std::optional<int> d) {
    std::vector<NodeId> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::optional<int> eff_d = d;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trimmed(line);
        if (s.empty() || s[0] == '#') continue;
        try {
            NodeId id = parse_id(s, eff_d);
            eff_d = id.d();
            out.push_back(id);
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return out;
}

std::vector<NodeId> parse_ids_file(const std::string& path, std::optional<int> d) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open id file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ids_text(buf.str(), d);
}

std::string format_ids(const std::vector<NodeId>& ids) {
    std::string out;
    for (const auto& id : ids) {
        out += id.to_bin();
        out += '\n';
    }
    return out;
}

}  // namespace kadlab
