#pragma once

#include "reviewkit/pdf/document.hpp"

#include <map>

namespace reviewkit::pdf {

// One placement of an image XObject on a page: the effective display
// size in points derived from the CTM at the Do operator.
struct ImagePlacement {
    int object_number = 0;
    std::string name;
    double display_width_pt = 0.0;
    double display_height_pt = 0.0;
};

// Scans a page's content (and any Form XObjects it draws) and reports
// every image placement. Images drawn more than once are reported once
// per placement.
std::vector<ImagePlacement> scan_image_placements(const Document& doc, int page_obj_num);

} // namespace reviewkit::pdf
