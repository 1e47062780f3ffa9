class Shop {
    void sell() {
        int amount = 0;
    }
}
