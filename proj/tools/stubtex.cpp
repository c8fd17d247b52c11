// Minimal offline typesetting toolchain with pdflatex-style semantics:
// exit 0 and produce <root>.pdf on success, exit 1 with an error line on
// bad input. Checks brace balance, undefined-command markers, and
// resolves \input/\include recursively. '\loopforever' spins, for
// timeout tests. Intended for environments without a TeX distribution
// and as the deterministic toolchain behind the compile-gate tests.

#include "reviewkit/pdf/document.hpp"
#include "reviewkit/pdf/writer.hpp"
#include "reviewkit/util/fs.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <thread>

namespace {

namespace stdfs = std::filesystem;
using reviewkit::fs::read_text;

struct TexError {
    std::string message;
    std::string file;
    size_t line;
};

// Returns total content length on success; throws TexError.
size_t process_file(const stdfs::path& path, std::set<stdfs::path>& visited, int depth) {
    if (depth > 16) throw TexError{"input nesting too deep", path.string(), 0};
    auto canonical = stdfs::weakly_canonical(path);
    if (!visited.insert(canonical).second) {
        throw TexError{"circular \\input", path.string(), 0};
    }
    if (!stdfs::exists(path)) {
        throw TexError{"file not found", path.string(), 0};
    }
    const std::string text = read_text(path);

    long balance = 0;
    size_t line = 1;
    size_t total = text.size();
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n') ++line;
        if (c == '%') {  // comment to end of line
            while (i < text.size() && text[i] != '\n') ++i;
            ++line;
            continue;
        }
        if (c == '\\') {
            size_t j = i + 1;
            while (j < text.size() && (isalpha(static_cast<unsigned char>(text[j])))) ++j;
            std::string command = text.substr(i + 1, j - i - 1);
            if (command == "undefinedcommand" || command == "brokenmacro") {
                throw TexError{"! Undefined control sequence. \\" + command, path.string(),
                               line};
            }
            if (command == "loopforever") {
                while (true) std::this_thread::sleep_for(std::chrono::milliseconds(50));
            }
            if (command == "input" || command == "include") {
                size_t open = text.find('{', j);
                size_t close = open == std::string::npos ? std::string::npos
                                                         : text.find('}', open);
                if (open == std::string::npos || close == std::string::npos) {
                    throw TexError{"! Missing filename for \\" + command, path.string(), line};
                }
                std::string name = text.substr(open + 1, close - open - 1);
                stdfs::path child = path.parent_path() / name;
                if (child.extension().empty()) child += ".tex";
                total += process_file(child, visited, depth + 1);
                i = close;
                continue;
            }
            if (command == "{" || command == "}" || command == "%" || command == "\\") {
                ++i;  // escaped literal
                continue;
            }
            i = j - 1;
            continue;
        }
        if (c == '{') ++balance;
        if (c == '}') {
            --balance;
            if (balance < 0) {
                throw TexError{"! Too many }'s.", path.string(), line};
            }
        }
    }
    if (balance != 0) {
        throw TexError{"! File ended while scanning: " + std::to_string(balance) +
                           " unclosed group(s).",
                       path.string(), line};
    }
    return total;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: stubtex <root.tex>\n";
        return 2;
    }
    stdfs::path root(argv[argc - 1]);

    try {
        std::set<stdfs::path> visited;
        size_t total = process_file(root, visited, 0);

        // One page per 2000 source characters, at least one.
        const int pages = static_cast<int>(std::max<size_t>(1, total / 2000));
        reviewkit::pdf::Document doc;
        using namespace reviewkit::pdf;
        Dict catalog{{"Type", make_name("Catalog")}, {"Pages", make_ref(2)}};
        doc.set_object(1, make_object(std::move(catalog)));
        Array kids;
        for (int p = 0; p < pages; ++p) kids.push_back(make_ref(3 + 2 * p));
        Dict pages_dict{{"Type", make_name("Pages")},
                        {"Kids", make_object(std::move(kids))},
                        {"Count", make_int(pages)}};
        doc.set_object(2, make_object(std::move(pages_dict)));
        for (int p = 0; p < pages; ++p) {
            Dict page{{"Type", make_name("Page")},
                      {"Parent", make_ref(2)},
                      {"MediaBox", make_object(Array{make_int(0), make_int(0), make_int(612),
                                                     make_int(792)})},
                      {"Contents", make_ref(4 + 2 * p)}};
            doc.set_object(3 + 2 * p, make_object(std::move(page)));
            std::string content = "q 1 0 0 1 72 720 cm 0 0 m 468 0 l S Q";
            Stream stream;
            stream.raw.assign(content.begin(), content.end());
            doc.set_object(4 + 2 * p, make_object(std::move(stream)));
        }
        doc.trailer()["Root"] = make_ref(1);

        auto bytes = write_document(doc);
        stdfs::path out = root.parent_path() / (root.stem().string() + ".pdf");
        reviewkit::fs::write_bytes(out, bytes.data(), bytes.size());
        std::cout << "stubtex: wrote " << out.string() << " (" << pages << " page(s))\n";
        return 0;
    } catch (const TexError& e) {
        std::cerr << e.file << ":" << e.line << ": " << e.message << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "stubtex: " << e.what() << "\n";
        return 1;
    }
}
