#include <stdio.h>
#include <string.h>
#include "braidcong.h"

int main(void) {
    BcWord *w = NULL;
    if (bc_word_parse("s1 t1 s1 t1", 0, &w) != BC_STATUS_OK) return 1;
    bool inside = false;
    if (bc_in_congruence(w, 5, &inside) != BC_STATUS_OK || !inside) return 2;
    char *cert = NULL;
    if (bc_certify(w, 4, &cert) != BC_STATUS_OK) return 3;
    bool valid = false;
    if (bc_check_cert(cert, &valid) != BC_STATUS_OK || !valid) return 4;
    bc_string_free(cert);
    bc_word_free(w);
    if (bc_word_parse("s1 x", 2, &w) != BC_STATUS_SYNTAX || strlen(bc_last_error()) == 0) return 5;
    uint64_t order = 0;
    if (bc_image_order(2, 9, BC_IMAGE_GENS_VIRTUAL_BURAU, 1000, &order) != BC_STATUS_OK || order != 18) return 6;
    printf("ok %s\n", bc_version());
    return 0;
}
