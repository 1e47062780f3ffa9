class Shop {
    void sell() {
        int price = 0;
    }
}
