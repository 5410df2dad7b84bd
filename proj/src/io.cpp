#include "mcbyte/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mcbyte {

namespace {

[[noreturn]] void fail(const std::string& file, int line_no, const std::string& what) {
    std::string msg;
    if (!file.empty()) {
        msg += file + ":";
    }
    if (line_no > 0) {
        msg += std::to_string(line_no) + ": ";
    } else if (!msg.empty()) {
        msg += " ";
    }
    throw ParseError(msg + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
T parse_number(std::string_view field, const std::string& file, int line_no, int field_idx) {
    field = trim(field);
    T value{};
    const auto* begin = field.data();
    const auto* end = field.data() + field.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end || field.empty()) {
        fail(file, line_no,
             "field " + std::to_string(field_idx) + " ('" + std::string(field) +
                 "') is not a valid number");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

void for_each_line(const std::string& text, auto&& fn) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        ++line_no;
        std::string_view line(text.data() + start, end - start);
        if (!trim(line).empty()) {
            fn(trim(line), line_no);
        }
        if (end == text.size()) break;
        start = end + 1;
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

MotRecord parse_mot_line(const std::string& line, int line_no, const std::string& file) {
    const auto fields = split(line, ',');
    if (fields.size() < 7) {
        fail(file, line_no,
             "expected at least 7 comma-separated fields, got " + std::to_string(fields.size()));
    }
    MotRecord r;
    r.frame = parse_number<int>(fields[0], file, line_no, 1);
    r.id = parse_number<long long>(fields[1], file, line_no, 2);
    r.x = parse_number<double>(fields[2], file, line_no, 3);
    r.y = parse_number<double>(fields[3], file, line_no, 4);
    r.w = parse_number<double>(fields[4], file, line_no, 5);
    r.h = parse_number<double>(fields[5], file, line_no, 6);
    r.score = parse_number<double>(fields[6], file, line_no, 7);
    if (r.frame < 1) {
        fail(file, line_no, "frame index must be >= 1");
    }
    return r;
}

std::vector<MotRecord> parse_mot(const std::string& text, const std::string& file) {
    std::vector<MotRecord> out;
    for_each_line(text, [&](std::string_view line, int line_no) {
        out.push_back(parse_mot_line(std::string(line), line_no, file));
    });
    return out;
}

std::vector<MotRecord> read_mot_file(const std::string& path) {
    return parse_mot(read_text_file(path), path);
}

std::string write_mot(std::vector<MotRecord> records) {
    std::sort(records.begin(), records.end(), [](const MotRecord& a, const MotRecord& b) {
        return a.frame != b.frame ? a.frame < b.frame : a.id < b.id;
    });
    std::string out;
    for (const MotRecord& r : records) {
        out += std::to_string(r.frame);
        out += ',';
        out += std::to_string(r.id);
        out += ',';
        out += format_double(r.x);
        out += ',';
        out += format_double(r.y);
        out += ',';
        out += format_double(r.w);
        out += ',';
        out += format_double(r.h);
        out += ',';
        out += format_double(r.score);
        out += ",-1,-1,-1\n";
    }
    return out;
}

void write_mot_file(const std::string& path, std::vector<MotRecord> records) {
    write_text_file(path, write_mot(std::move(records)));
}

std::vector<std::uint32_t> rle_encode(const std::vector<std::uint8_t>& bitmap, int width,
                                      int height) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (bitmap.size() != n) {
        throw ParseError("bitmap size " + std::to_string(bitmap.size()) +
                         " does not match " + std::to_string(width) + "x" +
                         std::to_string(height));
    }
    std::vector<std::uint32_t> runs;
    std::uint8_t current = 0;  // runs start with background
    std::uint32_t len = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t v = bitmap[i] ? 1 : 0;
        if (v == current) {
            ++len;
        } else {
            runs.push_back(len);
            current = v;
            len = 1;
        }
    }
    runs.push_back(len);
    if (runs.size() % 2 == 0 && runs.back() == 0) {
        runs.pop_back();  // never end on an empty foreground run
    }
    return runs;
}

std::vector<std::uint8_t> rle_decode(const std::vector<std::uint32_t>& runs, int width,
                                     int height) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::uint64_t total = 0;
    for (const std::uint32_t r : runs) {
        total += r;
    }
    if (total != n) {
        throw ParseError("RLE run sum " + std::to_string(total) + " does not match " +
                         std::to_string(width) + "x" + std::to_string(height) + " = " +
                         std::to_string(n));
    }
    std::vector<std::uint8_t> bitmap(n, 0);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (i % 2 == 1) {
            std::fill(bitmap.begin() + pos, bitmap.begin() + pos + runs[i], std::uint8_t{1});
        }
        pos += runs[i];
    }
    return bitmap;
}

std::vector<MaskStream> parse_mask_streams(const std::string& text, const std::string& file) {
    std::map<int, MaskStream> streams;
    for_each_line(text, [&](std::string_view line, int line_no) {
        std::istringstream ls{std::string(line)};
        std::string tag;
        ls >> tag;
        if (tag == "S") {
            MaskStream s;
            double x, y, w, h;
            if (!(ls >> s.stream_id >> s.birth_frame >> x >> y >> w >> h)) {
                fail(file, line_no, "malformed stream header (want: S id birth_frame x y w h)");
            }
            s.birth_bbox = BBox{x, y, w, h};
            if (!streams.emplace(s.stream_id, std::move(s)).second) {
                fail(file, line_no, "duplicate stream id");
            }
        } else if (tag == "M") {
            int stream_id, frame;
            MaskObservation obs;
            std::string rle;
            if (!(ls >> stream_id >> frame >> obs.mean_confidence >> obs.width >> obs.height >>
                  rle)) {
                fail(file, line_no,
                     "malformed mask line (want: M id frame conf width height rle)");
            }
            const auto it = streams.find(stream_id);
            if (it == streams.end()) {
                fail(file, line_no,
                     "mask line references undeclared stream " + std::to_string(stream_id));
            }
            for (const auto field : split(rle, ',')) {
                obs.runs.push_back(parse_number<std::uint32_t>(field, file, line_no, 6));
            }
            std::uint64_t total = 0;
            for (const std::uint32_t r : obs.runs) total += r;
            if (total != static_cast<std::uint64_t>(obs.width) * obs.height) {
                fail(file, line_no,
                     "RLE run sum " + std::to_string(total) + " does not match " +
                         std::to_string(obs.width) + "x" + std::to_string(obs.height));
            }
            if (!it->second.frames.emplace(frame, std::move(obs)).second) {
                fail(file, line_no, "duplicate mask for stream/frame");
            }
        } else {
            fail(file, line_no, "unknown record tag '" + tag + "'");
        }
    });
    std::vector<MaskStream> out;
    out.reserve(streams.size());
    for (auto& [id, s] : streams) {
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<MaskStream> read_mask_stream_file(const std::string& path) {
    return parse_mask_streams(read_text_file(path), path);
}

std::string write_mask_streams(const std::vector<MaskStream>& streams) {
    std::string out;
    for (const MaskStream& s : streams) {
        out += "S " + std::to_string(s.stream_id) + ' ' + std::to_string(s.birth_frame) + ' ' +
               format_double(s.birth_bbox.x) + ' ' + format_double(s.birth_bbox.y) + ' ' +
               format_double(s.birth_bbox.w) + ' ' + format_double(s.birth_bbox.h) + '\n';
        for (const auto& [frame, obs] : s.frames) {
            out += "M " + std::to_string(s.stream_id) + ' ' + std::to_string(frame) + ' ' +
                   format_double(obs.mean_confidence) + ' ' + std::to_string(obs.width) + ' ' +
                   std::to_string(obs.height) + ' ';
            for (std::size_t i = 0; i < obs.runs.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(obs.runs[i]);
            }
            out += '\n';
        }
    }
    return out;
}

void write_mask_stream_file(const std::string& path, const std::vector<MaskStream>& streams) {
    write_text_file(path, write_mask_streams(streams));
}

std::map<int, WarpTransform> parse_warps(const std::string& text, const std::string& file) {
    std::map<int, WarpTransform> out;
    for_each_line(text, [&](std::string_view line, int line_no) {
        std::istringstream ls{std::string(line)};
        int frame;
        WarpTransform w;
        if (!(ls >> frame >> w.a11 >> w.a12 >> w.a13 >> w.a21 >> w.a22 >> w.a23)) {
            fail(file, line_no, "malformed warp line (want: frame a11 a12 a13 a21 a22 a23)");
        }
        if (!out.emplace(frame, w).second) {
            fail(file, line_no, "duplicate warp for frame " + std::to_string(frame));
        }
    });
    return out;
}

std::map<int, WarpTransform> read_warp_file(const std::string& path) {
    return parse_warps(read_text_file(path), path);
}

std::string write_warps(const std::map<int, WarpTransform>& warps) {
    std::string out;
    for (const auto& [frame, w] : warps) {
        out += std::to_string(frame) + ' ' + format_double(w.a11) + ' ' + format_double(w.a12) +
               ' ' + format_double(w.a13) + ' ' + format_double(w.a21) + ' ' +
               format_double(w.a22) + ' ' + format_double(w.a23) + '\n';
    }
    return out;
}

void write_warp_file(const std::string& path, const std::map<int, WarpTransform>& warps) {
    write_text_file(path, write_warps(warps));
}

namespace {

void check_range(const std::string& key, double v, double lo, double hi,
                 const std::string& file, int line_no) {
    if (!(v >= lo && v <= hi)) {
        fail(file, line_no, "value for '" + key + "' out of range [" + format_double(lo) + ", " +
                                format_double(hi) + "]");
    }
}

}  // namespace

TrackerConfig parse_config(const std::string& text, const std::string& file) {
    TrackerConfig cfg;
    for_each_line(text, [&](std::string_view line, int line_no) {
        if (line.front() == '#') {
            return;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(file, line_no, "expected 'key = value'");
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty() || value.empty()) {
            fail(file, line_no, "expected 'key = value'");
        }
        const auto num = [&] { return parse_number<double>(value, file, line_no, 2); };
        if (key == "det_high") {
            cfg.det_high = num();
            check_range(key, cfg.det_high, 0.0, 1.0, file, line_no);
        } else if (key == "det_low_floor") {
            cfg.det_low_floor = num();
            check_range(key, cfg.det_low_floor, 0.0, 1.0, file, line_no);
        } else if (key == "new_track") {
            cfg.new_track = num();
            check_range(key, cfg.new_track, 0.0, 1.0, file, line_no);
        } else if (key == "match_stage1") {
            cfg.match_stage1 = num();
            check_range(key, cfg.match_stage1, 0.0, 1.0, file, line_no);
        } else if (key == "match_stage2") {
            cfg.match_stage2 = num();
            check_range(key, cfg.match_stage2, 0.0, 1.0, file, line_no);
        } else if (key == "match_unconfirmed") {
            cfg.match_unconfirmed = num();
            check_range(key, cfg.match_unconfirmed, 0.0, 1.0, file, line_no);
        } else if (key == "track_buffer") {
            cfg.track_buffer = parse_number<int>(value, file, line_no, 2);
            if (cfg.track_buffer < 1) {
                fail(file, line_no, "value for 'track_buffer' must be >= 1");
            }
        } else if (key == "mask_conf") {
            cfg.mask.mask_conf = num();
            check_range(key, cfg.mask.mask_conf, 0.0, 1.0, file, line_no);
        } else if (key == "mc_min") {
            cfg.mask.mc_min = num();
            check_range(key, cfg.mask.mc_min, 0.0, 1.0, file, line_no);
        } else if (key == "mf_min") {
            cfg.mask.mf_min = num();
            check_range(key, cfg.mask.mf_min, 0.0, 1.0, file, line_no);
        } else if (key == "variant") {
            const auto v = parse_variant(value);
            if (!v) {
                fail(file, line_no, "unknown variant '" + value +
                                        "' (want baseline, a1..a6, or mcbyte)");
            }
            cfg.variant = *v;
        } else {
            fail(file, line_no, "unknown config key '" + key + "'");
        }
    });
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        fail(file, 0, e.what());
    }
    return cfg;
}

TrackerConfig read_config_file(const std::string& path) {
    return parse_config(read_text_file(path), path);
}

std::vector<FrameInput> frames_from_dets(std::span<const MotRecord> dets,
                                         const WarpProvider& warps, int frame_count) {
    int n = frame_count;
    for (const MotRecord& d : dets) n = std::max(n, d.frame);
    std::vector<FrameInput> frames(static_cast<std::size_t>(n));
    for (int t = 1; t <= n; ++t) {
        frames[t - 1].warp = warps.at(t);
    }
    for (const MotRecord& d : dets) {
        frames[d.frame - 1].detections.push_back(Detection{d.bbox(), d.score});
    }
    return frames;
}

std::vector<MotRecord> records_from_outputs(std::span<const std::vector<TrackOutput>> outputs) {
    std::vector<MotRecord> recs;
    for (std::size_t f = 0; f < outputs.size(); ++f) {
        for (const TrackOutput& o : outputs[f]) {
            recs.push_back(MotRecord{static_cast<int>(f) + 1, o.id, o.bbox.x, o.bbox.y, o.bbox.w,
                                     o.bbox.h, o.score});
        }
    }
    return recs;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write file: " + path);
    }
    out << content;
}

}  // namespace mcbyte
