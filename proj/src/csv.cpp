#include "marketgraph/csv.hpp"

#include <fstream>
#include <sstream>

#include "marketgraph/errors.hpp"

namespace marketgraph {

CsvTable parse_csv(const std::string& text) {
    std::size_t i = 0;
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) i = 3;

    CsvTable table;
    int line = 1;
    std::size_t n = text.size();
    while (i < n) {
        if (text[i] == '\n') {  // blank line
            ++line;
            ++i;
            continue;
        }
        if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') {
            ++line;
            i += 2;
            continue;
        }

        CsvRow row;
        row.line = line;
        std::string field;
        bool row_done = false;
        while (!row_done) {
            if (i < n && text[i] == '"') {
                ++i;
                for (;;) {
                    if (i >= n)
                        throw MalformedRecord(row.line, "unterminated quoted field");
                    if (text[i] == '"') {
                        if (i + 1 < n && text[i + 1] == '"') {
                            field += '"';
                            i += 2;
                        } else {
                            ++i;
                            break;
                        }
                    } else {
                        if (text[i] == '\n') ++line;
                        field += text[i++];
                    }
                }
                if (i < n && text[i] != ',' && text[i] != '\n' &&
                    !(text[i] == '\r' && i + 1 < n && text[i + 1] == '\n'))
                    throw MalformedRecord(row.line,
                                          "content after closing quote in field");
            } else {
                while (i < n && text[i] != ',' && text[i] != '\n' &&
                       !(text[i] == '\r' && i + 1 < n && text[i + 1] == '\n')) {
                    if (text[i] == '"')
                        throw MalformedRecord(row.line,
                                              "quote inside unquoted field");
                    field += text[i++];
                }
            }
            row.fields.push_back(std::move(field));
            field.clear();
            if (i >= n) {
                row_done = true;
            } else if (text[i] == ',') {
                ++i;
            } else {  // newline ends the row
                if (text[i] == '\r') ++i;
                ++i;
                ++line;
                row_done = true;
            }
        }
        table.rows.push_back(std::move(row));
    }

    if (!table.rows.empty()) {
        table.header = std::move(table.rows.front().fields);
        table.rows.erase(table.rows.begin());
    }
    return table;
}

std::string csv_field(const std::string& value) {
    bool needs_quotes = value.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoFailure("read failed on " + path);
    return std::move(buf).str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoFailure("write failed on " + path);
}

}  // namespace marketgraph
