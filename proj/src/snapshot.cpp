#include "marketgraph/snapshot.hpp"

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "marketgraph/errors.hpp"

namespace marketgraph {

namespace {

constexpr char kMagic[8] = {'M', 'K', 'G', 'S', 'N', 'A', 'P', '1'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// little-endian writers into an in-memory payload buffer
void put_u8(std::string& b, std::uint8_t x) {
    b.push_back(static_cast<char>(x));
}
void put_u32(std::string& b, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
void put_u64(std::string& b, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
void put_str(std::string& b, const std::string& s) {
    put_u32(b, static_cast<std::uint32_t>(s.size()));
    b.append(s);
}

void put_value(std::string& b, const Value& v) {
    put_u8(b, static_cast<std::uint8_t>(v.kind()));
    switch (v.kind()) {
        case Value::Kind::Null: break;
        case Value::Kind::Text: put_str(b, v.as_text()); break;
        case Value::Kind::Integer:
            put_u64(b, static_cast<std::uint64_t>(v.as_integer()));
            break;
        case Value::Kind::Float: {
            double d = v.as_floating();
            std::uint64_t bits;
            std::memcpy(&bits, &d, 8);
            put_u64(b, bits);
            break;
        }
        case Value::Kind::Boolean: put_u8(b, v.as_boolean() ? 1 : 0); break;
        case Value::Kind::TextList:
            put_u32(b, static_cast<std::uint32_t>(v.as_text_list().size()));
            for (const auto& s : v.as_text_list()) put_str(b, s);
            break;
    }
}

void put_props(std::string& b, const PropertyMap& props) {
    put_u32(b, static_cast<std::uint32_t>(props.size()));
    for (const auto& [k, v] : props) {
        put_str(b, k);
        put_value(b, v);
    }
}

class Reader {
public:
    Reader(const std::string& bytes) : b_(bytes) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(b_[pos_++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t x = 0;
        for (int i = 0; i < 4; ++i)
            x |= static_cast<std::uint32_t>(static_cast<unsigned char>(b_[pos_++])) << (8 * i);
        return x;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t x = 0;
        for (int i = 0; i < 8; ++i)
            x |= static_cast<std::uint64_t>(static_cast<unsigned char>(b_[pos_++])) << (8 * i);
        return x;
    }
    std::string str() {
        std::uint32_t n = u32();
        need(n);
        std::string s = b_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    Value value() {
        switch (static_cast<Value::Kind>(u8())) {
            case Value::Kind::Null: return Value::null();
            case Value::Kind::Text: return Value::text(str());
            case Value::Kind::Integer:
                return Value::integer(static_cast<std::int64_t>(u64()));
            case Value::Kind::Float: {
                std::uint64_t bits = u64();
                double d;
                std::memcpy(&d, &bits, 8);
                return Value::floating(d);
            }
            case Value::Kind::Boolean: return Value::boolean(u8() != 0);
            case Value::Kind::TextList: {
                std::uint32_t n = u32();
                TextListT xs;
                xs.reserve(n);
                for (std::uint32_t i = 0; i < n; ++i) xs.push_back(str());
                return Value::text_list(std::move(xs));
            }
        }
        throw CorruptSnapshot("unknown value tag");
    }
    PropertyMap props() {
        std::uint32_t n = u32();
        PropertyMap m;
        for (std::uint32_t i = 0; i < n; ++i) {
            std::string k = str();
            m.emplace(std::move(k), value());
        }
        return m;
    }
    bool done() const { return pos_ == b_.size(); }

private:
    void need(std::size_t n) {
        if (pos_ + n > b_.size()) throw CorruptSnapshot("truncated payload");
    }
    const std::string& b_;
    std::size_t pos_ = 0;
};

std::string encode_payload(const PropertyGraph& g) {
    std::string b;
    put_u64(b, g.next_node_id());
    put_u64(b, g.next_edge_id());
    auto idx = g.declared_indexes();
    put_u32(b, static_cast<std::uint32_t>(idx.size()));
    for (const auto& [label, prop] : idx) {
        put_str(b, label);
        put_str(b, prop);
    }
    put_u64(b, g.node_count());
    for (const auto& [id, n] : g.nodes()) {
        put_u64(b, id.v);
        put_u32(b, static_cast<std::uint32_t>(n.labels.size()));
        for (const auto& l : n.labels) put_str(b, l);
        put_props(b, n.props);
    }
    put_u64(b, g.edge_count());
    for (const auto& [id, e] : g.edges()) {
        put_u64(b, id.v);
        put_u64(b, e.src.v);
        put_u64(b, e.dst.v);
        put_str(b, e.rel_type);
        put_props(b, e.props);
    }
    return b;
}

PropertyGraph decode_payload(const std::string& bytes) {
    Reader r(bytes);
    PropertyGraph g;
    std::uint64_t next_node = r.u64();
    std::uint64_t next_edge = r.u64();
    std::uint32_t index_count = r.u32();
    std::vector<std::pair<std::string, std::string>> idx;
    idx.reserve(index_count);
    for (std::uint32_t i = 0; i < index_count; ++i) {
        std::string label = r.str();
        std::string prop = r.str();
        idx.emplace_back(std::move(label), std::move(prop));
    }
    std::uint64_t node_count = r.u64();
    for (std::uint64_t i = 0; i < node_count; ++i) {
        Node n;
        n.id = NodeId{r.u64()};
        std::uint32_t label_count = r.u32();
        for (std::uint32_t j = 0; j < label_count; ++j) n.labels.insert(r.str());
        n.props = r.props();
        g.restore_node(std::move(n));
    }
    std::uint64_t edge_count = r.u64();
    for (std::uint64_t i = 0; i < edge_count; ++i) {
        Edge e;
        e.id = EdgeId{r.u64()};
        e.src = NodeId{r.u64()};
        e.dst = NodeId{r.u64()};
        e.rel_type = r.str();
        e.props = r.props();
        g.restore_edge(std::move(e));
    }
    if (!r.done()) throw CorruptSnapshot("trailing bytes after payload");
    for (const auto& [label, prop] : idx) g.declare_index(label, prop);
    g.restore_id_counters(next_node, next_edge);
    return g;
}

}  // namespace

void persist(const PropertyGraph& g, const std::filesystem::path& path) {
    std::string payload = encode_payload(g);
    std::string header;
    header.append(kMagic, sizeof kMagic);
    put_u32(header, kVersion);
    put_u64(header, payload.size());
    put_u64(header, fnv1a64(payload));

    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure("cannot open for write: " + tmp.string());
        out.write(header.data(), static_cast<std::streamsize>(header.size()));
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!out) throw IoFailure("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoFailure("rename failed: " + path.string() + ": " + ec.message());
}

PropertyGraph load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open for read: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    constexpr std::size_t kHeaderSize = 8 + 4 + 8 + 8;
    if (bytes.size() < kHeaderSize) throw CorruptSnapshot("file shorter than header");
    if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
        throw CorruptSnapshot("bad magic");
    Reader hdr(bytes);
    for (int i = 0; i < 8; ++i) hdr.u8();  // past magic
    std::uint32_t version = hdr.u32();
    if (version != kVersion)
        throw CorruptSnapshot("unsupported version " + std::to_string(version));
    std::uint64_t payload_size = hdr.u64();
    std::uint64_t checksum = hdr.u64();
    if (bytes.size() != kHeaderSize + payload_size)
        throw CorruptSnapshot("payload size mismatch");
    std::string payload = bytes.substr(kHeaderSize);
    if (fnv1a64(payload) != checksum) throw CorruptSnapshot("checksum mismatch");
    return decode_payload(payload);
}

}  // namespace marketgraph
