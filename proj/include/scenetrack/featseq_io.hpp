#pragma once

#include <string>
#include <vector>

#include "scenetrack/io_util.hpp"
#include "scenetrack/synth_gen.hpp"

namespace scenetrack {

// Binary frame container: magic "FSEQ1", then W, H, D, T as little-endian
// u32, then T frames of W*H*D little-endian 32-bit floats, row-major with
// channel innermost.  Values survive a round trip bit-exactly because all
// producers quantize through float before writing.
void write_featseq(const std::string& path, const std::vector<Grid3D>& frames);
std::vector<Grid3D> read_featseq(const std::string& path);

// JSON sidecar: ground-truth boxes plus the object tracks behind them.
struct Annotations {
    std::vector<TargetBox> gt_boxes;
    ObjectTrack target;
    std::vector<ObjectTrack> distractors;
    std::uint64_t seed = 0;
};

void write_annotations(const std::string& path, const Annotations& ann);
Annotations read_annotations(const std::string& path);

inline Annotations annotations_of(const SyntheticSequence& seq) {
    return {seq.gt_boxes, seq.target, seq.distractors, seq.seed};
}

}  // namespace scenetrack
