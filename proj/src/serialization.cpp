#include "pvac/serialization.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "pvac/errors.hpp"

namespace pvac {

namespace {

constexpr char kMagic[4] = {'P', 'V', 'S', 'F'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
}

std::uint32_t get_u32(const std::string& in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  return v;
}

void put_f64(std::string& out, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xffu));
  }
}

double get_f64(const std::string& in, std::size_t pos) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string snapshots_csv(const std::vector<Snapshot>& snapshots, const Grid1D& grid) {
  std::string out = "t,x,v,eta,eta_x\n";
  for (const auto& s : snapshots) {
    const std::string t = format_double(s.t);
    for (std::size_t j = 0; j < s.v.size(); ++j) {
      out += t + ',' + format_double(grid.x(j)) + ',' + format_double(s.v[j]) + ',' +
             format_double(s.eta[j]) + ',' + format_double(s.eta_x[j]) + '\n';
    }
  }
  return out;
}

std::string energy_csv(const EnergySeries& series) {
  std::string out = "t,p,s,k,value,total\n";
  for (const auto& b : series.series) {
    const std::string t = format_double(b.t);
    const std::string total = format_double(b.total);
    for (const auto& tv : b.terms) {
      out += t + ',' + format_double(tv.term.p) + ',' + std::to_string(tv.term.s) + ',' +
             std::to_string(tv.term.k) + ',' + format_double(tv.value) + ',' + total + '\n';
    }
  }
  return out;
}

std::string encode_frame(const Snapshot& snapshot) {
  const nlohmann::json header = {{"fields", {"v", "eta", "eta_x"}},
                                 {"t", snapshot.t},
                                 {"n_nodes", snapshot.v.size()},
                                 {"endianness", "little"},
                                 {"dtype", "float64"},
                                 {"source_tag", snapshot.source_tag}};
  const std::string text = header.dump();
  std::string out(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  for (const auto* field : {&snapshot.v, &snapshot.eta, &snapshot.eta_x}) {
    for (double x : *field) {
      put_f64(out, x);
    }
  }
  return out;
}

std::string encode_frames(const std::vector<Snapshot>& snapshots) {
  std::string out;
  for (const auto& s : snapshots) {
    out += encode_frame(s);
  }
  return out;
}

std::vector<Snapshot> decode_frames(const std::string& bytes) {
  std::vector<Snapshot> out;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 8 || std::memcmp(bytes.data() + pos, kMagic, 4) != 0) {
      fail(ErrorCode::IoFailure, "snapshot stream: bad frame magic at byte " + std::to_string(pos));
    }
    const std::uint32_t len = get_u32(bytes, pos + 4);
    pos += 8;
    if (bytes.size() - pos < len) {
      fail(ErrorCode::IoFailure, "snapshot stream: truncated header");
    }
    nlohmann::json header;
    try {
      header = nlohmann::json::parse(bytes.substr(pos, len));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::IoFailure, std::string("snapshot stream: bad header: ") + e.what());
    }
    pos += len;
    if (header.value("endianness", "") != "little" || header.value("dtype", "") != "float64") {
      fail(ErrorCode::IoFailure, "snapshot stream: unsupported payload encoding");
    }
    const std::size_t n = header.at("n_nodes").get<std::size_t>();
    const std::size_t fields = header.at("fields").size();
    if (fields != 3 || bytes.size() - pos < 8 * n * fields) {
      fail(ErrorCode::IoFailure, "snapshot stream: truncated payload");
    }
    Snapshot s;
    s.t = header.at("t").get<double>();
    s.source_tag = header.value("source_tag", "");
    for (auto* field : {&s.v, &s.eta, &s.eta_x}) {
      field->resize(n);
      for (std::size_t j = 0; j < n; ++j, pos += 8) {
        (*field)[j] = get_f64(bytes, pos);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::IoFailure, "cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      fail(ErrorCode::IoFailure, "cannot write " + tmp);
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      fail(ErrorCode::IoFailure, "short write to " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::IoFailure, "cannot rename into " + path);
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::IoFailure, "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace pvac
