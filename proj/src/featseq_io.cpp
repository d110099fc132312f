#include "scenetrack/featseq_io.hpp"

#include <cstdint>
#include <cstring>

#include <json.hpp>

namespace scenetrack {

namespace {

constexpr char kMagic[5] = {'F', 'S', 'E', 'Q', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const std::string& s, std::size_t at) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[at])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 3])) << 24);
}

}  // namespace

void write_featseq(const std::string& path, const std::vector<Grid3D>& frames) {
    if (frames.empty()) throw std::invalid_argument("write_featseq: no frames");
    const int w = frames[0].width, h = frames[0].height, d = frames[0].channels;
    for (const auto& f : frames)
        if (f.width != w || f.height != h || f.channels != d)
            throw std::invalid_argument("write_featseq: inconsistent frame shapes");

    std::string out;
    out.reserve(21 + frames.size() * frames[0].values.size() * 4);
    out.append(kMagic, sizeof(kMagic));
    put_u32(out, static_cast<std::uint32_t>(w));
    put_u32(out, static_cast<std::uint32_t>(h));
    put_u32(out, static_cast<std::uint32_t>(d));
    put_u32(out, static_cast<std::uint32_t>(frames.size()));
    for (const auto& f : frames) {
        for (double v : f.values) {
            const float fv = static_cast<float>(v);
            std::uint32_t bits;
            std::memcpy(&bits, &fv, 4);
            put_u32(out, bits);
        }
    }
    atomic_write_file(path, out);
}

std::vector<Grid3D> read_featseq(const std::string& path) {
    const std::string s = read_file(path);
    if (s.size() < 21) throw IoError("truncated header: " + path);
    if (std::memcmp(s.data(), kMagic, sizeof(kMagic)) != 0)
        throw IoError("bad magic: " + path);
    const std::uint32_t w = get_u32(s, 5), h = get_u32(s, 9), d = get_u32(s, 13),
                        t = get_u32(s, 17);
    if (w < 1 || h < 1 || d < 1 || t < 1) throw IoError("bad header fields: " + path);
    const std::size_t per_frame = static_cast<std::size_t>(w) * h * d;
    if (s.size() != 21 + per_frame * t * 4) throw IoError("payload size mismatch: " + path);

    std::vector<Grid3D> frames;
    frames.reserve(t);
    std::size_t at = 21;
    for (std::uint32_t i = 0; i < t; ++i) {
        Grid3D f(static_cast<int>(w), static_cast<int>(h), static_cast<int>(d));
        for (std::size_t j = 0; j < per_frame; ++j, at += 4) {
            const std::uint32_t bits = get_u32(s, at);
            float fv;
            std::memcpy(&fv, &bits, 4);
            f.values[j] = static_cast<double>(fv);
        }
        frames.push_back(std::move(f));
    }
    return frames;
}

namespace {

nlohmann::json track_to_json(const ObjectTrack& tr) {
    return {{"cx", tr.cx}, {"cy", tr.cy}, {"signature", tr.signature}};
}

ObjectTrack track_from_json(const nlohmann::json& j) {
    ObjectTrack tr;
    tr.cx = j.at("cx").get<std::vector<double>>();
    tr.cy = j.at("cy").get<std::vector<double>>();
    tr.signature = j.at("signature").get<std::vector<double>>();
    return tr;
}

}  // namespace

void write_annotations(const std::string& path, const Annotations& ann) {
    nlohmann::json j;
    j["format"] = "scenetrack-annotations";
    j["version"] = 1;
    j["seed"] = ann.seed;
    auto& boxes = j["boxes"] = nlohmann::json::array();
    for (const auto& b : ann.gt_boxes) boxes.push_back({b.cx, b.cy, b.width, b.height});
    j["target"] = track_to_json(ann.target);
    auto& ds = j["distractors"] = nlohmann::json::array();
    for (const auto& tr : ann.distractors) ds.push_back(track_to_json(tr));
    atomic_write_file(path, j.dump(2) + "\n");
}

Annotations read_annotations(const std::string& path) {
    const std::string s = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad annotation json: " + path + " (" + e.what() + ")");
    }
    try {
        if (j.at("format") != "scenetrack-annotations")
            throw IoError("not an annotation file: " + path);
        Annotations ann;
        ann.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& b : j.at("boxes")) {
            if (!b.is_array() || b.size() != 4) throw IoError("bad box entry: " + path);
            ann.gt_boxes.push_back({b[0].get<double>(), b[1].get<double>(),
                                    b[2].get<double>(), b[3].get<double>()});
        }
        ann.target = track_from_json(j.at("target"));
        for (const auto& d : j.at("distractors"))
            ann.distractors.push_back(track_from_json(d));
        return ann;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad annotation fields: " + path + " (" + e.what() + ")");
    }
}

}  // namespace scenetrack
