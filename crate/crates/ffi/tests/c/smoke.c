#include <math.h>
#include <stdio.h>
#include <string.h>

#include "alpha_harmonic.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            const char *msg = ah_last_error_message();                \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,   \
                    #cond, msg ? msg : "no message");                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    AhComplex half = {0.5, 0.0};
    AhComplex k;
    CHECK(ah_poisson_kernel(1.0, half, &k) == AH_STATUS_OK);
    CHECK(k.re == 4.5 && k.im == 0.0);

    AhComplex outside = {1.0, 0.0};
    CHECK(ah_poisson_kernel(1.0, outside, &k) == AH_STATUS_DOMAIN);
    CHECK(ah_last_error_message() != NULL);

    int64_t ns[] = {0};
    double re[] = {1.0}, im[] = {0.0};
    AhBoundary *one = NULL;
    CHECK(ah_boundary_from_coeffs(ns, re, im, 1, &one) == AH_STATUS_OK);
    AhFunction *f = NULL;
    CHECK(ah_function_new(2.0, one, AH_ENGINE_QUADRATURE, &f) == AH_STATUS_OK);
    ah_boundary_free(one);
    AhComplex z = {0.3, 0.4}, v;
    CHECK(ah_function_extend(f, z, &v) == AH_STATUS_OK);
    CHECK(fabs(v.re - 1.0) < 1e-12 && fabs(v.im) < 1e-12);
    ah_function_free(f);

    char *json = NULL;
    bool pass = false;
    CHECK(ah_verify_json("alpha0", "{\"seeds\": 2}", &json, &pass) == AH_STATUS_OK);
    CHECK(pass && strstr(json, "\"suite\": \"alpha0\"") != NULL);
    ah_string_free(json);

    CHECK(ah_verify_json("nope", NULL, &json, &pass) == AH_STATUS_PARSE);
    printf("ok %s\n", ah_version());
    return 0;
}
