#include "suction/image_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace suction {

namespace {

constexpr std::array<char, 8> kRawMagic = {'S', 'F', 'L', 'O', 'A', 'T', '3', '2'};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path.string());
  return in;
}

// Reads one whitespace-delimited PNM header token, skipping '#' comments.
// Comments of the form "# frame N" carry the frame timestamp.
std::string next_token(std::istream& in, int* timestamp_out = nullptr) {
  for (;;) {
    int c = in.peek();
    if (c == EOF) throw io_error("truncated PNM header");
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
      if (timestamp_out) {
        std::istringstream cs(comment);
        std::string hash, word;
        int t = 0;
        cs >> word;  // leading '#...' chunk
        if (word == "#") cs >> word;
        else word.erase(0, 1);
        if (word == "frame" && (cs >> t)) *timestamp_out = t;
        (void)hash;
      }
      continue;
    }
    std::string tok;
    while (in.peek() != EOF && !std::isspace(in.peek())) tok.push_back(static_cast<char>(in.get()));
    return tok;
  }
}

int parse_dim(const std::string& tok, const char* what) {
  try {
    const int v = std::stoi(tok);
    if (v <= 0) throw io_error(std::string("non-positive ") + what);
    return v;
  } catch (const io_error&) {
    throw;
  } catch (const std::exception&) {
    throw io_error(std::string("bad PNM ") + what + ": " + tok);
  }
}

void put_u32_le(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

std::uint32_t get_u32_le(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) throw io_error("truncated raw header");
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

}  // namespace

void write_pgm(const std::filesystem::path& path, const Frame& frame) {
  auto out = open_out(path);
  out << "P5\n# frame " << frame.timestamp << "\n"
      << frame.dims.width << " " << frame.dims.height << "\n255\n";
  std::vector<std::uint8_t> row(static_cast<std::size_t>(frame.dims.width));
  for (int r = 0; r < frame.dims.height; ++r) {
    for (int c = 0; c < frame.dims.width; ++c) {
      const double v = std::clamp(frame.pixels[frame.dims.index({c, r})], 0.0, 1.0);
      row[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw io_error("write failed: " + path.string());
}

Frame read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  int timestamp = 0;
  if (next_token(in, &timestamp) != "P5") throw io_error("not a P5 graymap: " + path.string());
  const int w = parse_dim(next_token(in, &timestamp), "width");
  const int h = parse_dim(next_token(in, &timestamp), "height");
  const int maxval = parse_dim(next_token(in, &timestamp), "maxval");
  if (maxval != 255) throw io_error("unsupported P5 maxval (want 255): " + path.string());
  in.get();  // single whitespace after maxval

  Frame frame = make_frame({w, h}, 0.0, timestamp);
  std::vector<std::uint8_t> raw(frame.dims.cells());
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!in) throw io_error("truncated P5 payload: " + path.string());
  for (std::size_t i = 0; i < raw.size(); ++i) frame.pixels[i] = raw[i] / 255.0;
  return frame;
}

void write_pbm(const std::filesystem::path& path, const BloodMask& mask) {
  auto out = open_out(path);
  out << "P4\n" << mask.dims.width << " " << mask.dims.height << "\n";
  const int bytes_per_row = (mask.dims.width + 7) / 8;
  std::vector<std::uint8_t> row(static_cast<std::size_t>(bytes_per_row));
  for (int r = 0; r < mask.dims.height; ++r) {
    std::fill(row.begin(), row.end(), 0);
    for (int c = 0; c < mask.dims.width; ++c) {
      if (mask.bits[mask.dims.index({c, r})]) {
        row[static_cast<std::size_t>(c / 8)] |= static_cast<std::uint8_t>(0x80u >> (c % 8));
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()), bytes_per_row);
  }
  if (!out) throw io_error("write failed: " + path.string());
}

BloodMask read_pbm(const std::filesystem::path& path) {
  auto in = open_in(path);
  if (next_token(in) != "P4") throw io_error("not a P4 bitmap: " + path.string());
  const int w = parse_dim(next_token(in), "width");
  const int h = parse_dim(next_token(in), "height");
  in.get();

  BloodMask mask = make_mask({w, h});
  const int bytes_per_row = (w + 7) / 8;
  std::vector<std::uint8_t> row(static_cast<std::size_t>(bytes_per_row));
  for (int r = 0; r < h; ++r) {
    in.read(reinterpret_cast<char*>(row.data()), bytes_per_row);
    if (!in) throw io_error("truncated P4 payload: " + path.string());
    for (int c = 0; c < w; ++c) {
      const bool bit = (row[static_cast<std::size_t>(c / 8)] >> (7 - c % 8)) & 1u;
      mask.bits[mask.dims.index({c, r})] = bit ? 1 : 0;
    }
  }
  return mask;
}

void write_ppm(const std::filesystem::path& path, GridDims dims,
               const std::vector<std::uint8_t>& rgb) {
  if (rgb.size() != dims.cells() * 3) throw io_error("RGB payload size mismatch");
  auto out = open_out(path);
  out << "P6\n" << dims.width << " " << dims.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!out) throw io_error("write failed: " + path.string());
}

void write_raw_planes(const std::filesystem::path& path, const RawPlanes& data) {
  auto out = open_out(path);
  out.write(kRawMagic.data(), static_cast<std::streamsize>(kRawMagic.size()));
  put_u32_le(out, static_cast<std::uint32_t>(data.dims.width));
  put_u32_le(out, static_cast<std::uint32_t>(data.dims.height));
  for (const auto& plane : data.planes) {
    if (plane.size() != data.dims.cells()) throw io_error("raw plane size mismatch");
    for (float f : plane) {
      std::uint32_t bits;
      std::memcpy(&bits, &f, 4);
      put_u32_le(out, bits);
    }
  }
  if (!out) throw io_error("write failed: " + path.string());
}

RawPlanes read_raw_planes(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::array<char, 8> magic{};
  in.read(magic.data(), static_cast<std::streamsize>(magic.size()));
  if (!in || magic != kRawMagic) throw io_error("bad raw magic: " + path.string());
  const int w = static_cast<int>(get_u32_le(in));
  const int h = static_cast<int>(get_u32_le(in));
  if (w <= 0 || h <= 0) throw io_error("bad raw dims: " + path.string());

  RawPlanes data;
  data.dims = {w, h};
  const std::size_t n = data.dims.cells();
  for (;;) {
    std::vector<float> plane;
    plane.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      unsigned char bytes[4];
      in.read(reinterpret_cast<char*>(bytes), 4);
      if (!in) {
        if (i == 0 && in.eof()) {
          if (data.planes.empty()) throw io_error("raw file has no planes: " + path.string());
          return data;
        }
        throw io_error("truncated raw plane: " + path.string());
      }
      std::uint32_t bits = static_cast<std::uint32_t>(bytes[0]) |
                           (static_cast<std::uint32_t>(bytes[1]) << 8) |
                           (static_cast<std::uint32_t>(bytes[2]) << 16) |
                           (static_cast<std::uint32_t>(bytes[3]) << 24);
      float f;
      std::memcpy(&f, &bits, 4);
      plane.push_back(f);
    }
    data.planes.push_back(std::move(plane));
  }
}

void write_posterior(const std::filesystem::path& path, const PosteriorMap& map) {
  RawPlanes data{map.dims, {std::vector<float>(map.prob.begin(), map.prob.end())}};
  write_raw_planes(path, data);
}

PosteriorMap read_posterior(const std::filesystem::path& path) {
  const RawPlanes data = read_raw_planes(path);
  if (data.planes.size() != 1) throw io_error("posterior file must have 1 plane: " + path.string());
  PosteriorMap map{data.dims, std::vector<double>(data.planes[0].begin(), data.planes[0].end())};
  return map;
}

void write_flow(const std::filesystem::path& path, const FlowField& flow) {
  RawPlanes data{flow.dims,
                 {std::vector<float>(flow.u.begin(), flow.u.end()),
                  std::vector<float>(flow.v.begin(), flow.v.end())}};
  write_raw_planes(path, data);
}

FlowField read_flow(const std::filesystem::path& path) {
  const RawPlanes data = read_raw_planes(path);
  if (data.planes.size() != 2) throw io_error("flow file must have 2 planes: " + path.string());
  FlowField flow{data.dims, std::vector<double>(data.planes[0].begin(), data.planes[0].end()),
                 std::vector<double>(data.planes[1].begin(), data.planes[1].end())};
  return flow;
}

void write_age_counts(const std::filesystem::path& path, const AgeCountMap& counts) {
  std::vector<float> plane(counts.counts.size());
  std::transform(counts.counts.begin(), counts.counts.end(), plane.begin(),
                 [](std::int32_t c) { return static_cast<float>(c); });
  write_raw_planes(path, RawPlanes{counts.dims, {std::move(plane)}});
}

AgeCountMap read_age_counts(const std::filesystem::path& path) {
  const RawPlanes data = read_raw_planes(path);
  if (data.planes.size() != 1) throw io_error("age file must have 1 plane: " + path.string());
  AgeCountMap counts = make_age_counts(data.dims);
  for (std::size_t i = 0; i < counts.counts.size(); ++i) {
    counts.counts[i] = static_cast<std::int32_t>(std::lround(data.planes[0][i]));
  }
  return counts;
}

void write_trajectory(const std::filesystem::path& path, const PixelTrajectory& traj) {
  auto out = open_out(path);
  for (const Pixel& p : traj.waypoints) out << p.col << " " << p.row << "\n";
  if (!out) throw io_error("write failed: " + path.string());
}

PixelTrajectory read_trajectory(const std::filesystem::path& path) {
  auto in = open_in(path);
  PixelTrajectory traj;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Pixel p;
    ls >> p.col >> p.row;
    if (ls.fail()) {
      throw io_error(path.string() + ":" + std::to_string(lineno) + ": expected 'col row'");
    }
    traj.waypoints.push_back(p);
  }
  return traj;
}

}  // namespace suction
