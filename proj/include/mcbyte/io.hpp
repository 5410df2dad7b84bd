#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcbyte/cmc.hpp"
#include "mcbyte/maskprov.hpp"
#include "mcbyte/tracker.hpp"

namespace mcbyte {

// Input-format fault; message carries "file:line: what" context when known.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One MOTChallenge CSV row: frame,id,x,y,w,h,score,-1,-1,-1. Detections use
// id -1; gt rows may carry extra class/visibility columns, which parse
// ignores.
struct MotRecord {
    int frame = 0;
    long long id = -1;
    double x = 0.0, y = 0.0, w = 0.0, h = 0.0;
    double score = 1.0;

    BBox bbox() const { return BBox{x, y, w, h}; }
    bool operator==(const MotRecord&) const = default;
};

MotRecord parse_mot_line(const std::string& line, int line_no = 0,
                         const std::string& file = {});
std::vector<MotRecord> parse_mot(const std::string& text, const std::string& file = {});
std::vector<MotRecord> read_mot_file(const std::string& path);

// Records are sorted by (frame, id) before rendering; floats print in
// shortest round-trip form, lines end with \n.
std::string write_mot(std::vector<MotRecord> records);
void write_mot_file(const std::string& path, std::vector<MotRecord> records);

// Row-major binary RLE: runs alternate background/foreground starting with
// background (leading 0 permits a foreground start). Decode rejects run sums
// that miss width*height; encode emits the canonical form (no interior zero
// runs, no trailing zero run, [w*h] for the empty mask).
std::vector<std::uint32_t> rle_encode(const std::vector<std::uint8_t>& bitmap, int width,
                                      int height);
std::vector<std::uint8_t> rle_decode(const std::vector<std::uint32_t>& runs, int width,
                                     int height);

std::vector<MaskStream> parse_mask_streams(const std::string& text,
                                           const std::string& file = {});
std::vector<MaskStream> read_mask_stream_file(const std::string& path);
std::string write_mask_streams(const std::vector<MaskStream>& streams);
void write_mask_stream_file(const std::string& path, const std::vector<MaskStream>& streams);

std::map<int, WarpTransform> parse_warps(const std::string& text, const std::string& file = {});
std::map<int, WarpTransform> read_warp_file(const std::string& path);
std::string write_warps(const std::map<int, WarpTransform>& warps);
void write_warp_file(const std::string& path, const std::map<int, WarpTransform>& warps);

// key = value lines, '#' comments; unknown keys and out-of-range values are
// rejected by name. Defaults are the TrackerConfig constants.
TrackerConfig parse_config(const std::string& text, const std::string& file = {});
TrackerConfig read_config_file(const std::string& path);

// Tracker-ready frame sequence from detection records: frames 1..N where N
// is the larger of frame_count and the last detection's frame; the provider
// supplies one warp per frame.
std::vector<FrameInput> frames_from_dets(std::span<const MotRecord> dets,
                                         const WarpProvider& warps, int frame_count = 0);
std::vector<MotRecord> records_from_outputs(std::span<const std::vector<TrackOutput>> outputs);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Shortest round-trip decimal rendering (locale-independent).
std::string format_double(double v);

}  // namespace mcbyte
