#include <stdio.h>
#include <string.h>

#include "almost_circles.h"

int main(void) {
    AcGeometry *g = NULL;
    if (ac_geometry_from_json("{\"n\": 2, \"closed_sets\": [[], [1], [2], [1, 2]]}", &g) != AC_STATUS_OK) {
        return 10;
    }
    size_t dim = 0;
    if (ac_geometry_convex_dimension(g, &dim) != AC_STATUS_OK || dim != 2) {
        return 11;
    }
    char *cert = NULL;
    if (ac_represent(g, 0.5, 0, NULL, &cert) != AC_STATUS_OK) {
        fprintf(stderr, "%s\n", ac_last_error_message());
        return 12;
    }
    bool pass = false;
    AcStatus s = ac_verify_certificate(cert, &pass, NULL);
    ac_string_free(cert);
    ac_geometry_free(g);
    if (s != AC_STATUS_OK || !pass) {
        return 13;
    }
    if (ac_geometry_from_json("[", &g) != AC_STATUS_INVALID_INPUT || strlen(ac_last_error_message()) == 0) {
        return 14;
    }
    puts("ok");
    return 0;
}
